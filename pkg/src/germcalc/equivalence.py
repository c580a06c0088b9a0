"""Finite-order equivalence of families and sets of ideals.

A map Phi is an equivalence of order k between ideals I and J when every
generator of J pulled back through Phi lies in I + m^k and every generator
of I pulled back through Phi's inverse lies in J + m^k.  Families are
checked index by index; sets are checked by existence of partners in both
directions, with pairwise verdicts memoized.

For large sets the caller may supply candidate pools (supersets searched
for partners, useful to absorb window-boundary effects) and a candidate
proposal hook that orders or prunes the indices tried for each member.
Pruning can only suppress matches, never invent them, so a positive set
verdict never depends on the hook; negative verdicts rely on the hook
proposing every index that could possibly match, which callers should
cross-check (see the curve-set driver).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .errors import DimensionError, PrecisionError
from .ideals import IdealPresentation, JetSpace, jet_membership
from .series import FormalMap, FormalSeries, compose

MODES = ("family", "set")

CandidateHook = Callable[[str, int], Optional[Iterable[int]]]


@dataclass(frozen=True)
class GermFamily:
    """Finitely many labelled ideals in a common dimension."""

    labels: tuple[str, ...]
    ideals: tuple[IdealPresentation, ...]
    mode: str = "family"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if len(self.labels) != len(self.ideals):
            raise ValueError("labels and ideals differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("family labels must be distinct")
        if not self.ideals:
            raise ValueError("a germ family needs at least one member")
        dims = {i.dimension for i in self.ideals}
        if len(dims) != 1:
            raise DimensionError("family members live in different dimensions")

    @classmethod
    def of(cls, mode: str, items: Iterable[tuple[str, IdealPresentation]]) -> "GermFamily":
        pairs = list(items)
        return cls(
            labels=tuple(label for label, _ in pairs),
            ideals=tuple(ideal for _, ideal in pairs),
            mode=mode,
        )

    @property
    def dimension(self) -> int:
        return self.ideals[0].dimension

    @property
    def generator_truncation(self) -> Optional[int]:
        bounds = [b for b in (i.generator_truncation for i in self.ideals) if b is not None]
        return min(bounds) if bounds else None

    def with_mode(self, mode: str) -> "GermFamily":
        if mode == self.mode:
            return self
        return GermFamily(labels=self.labels, ideals=self.ideals, mode=mode)

    def __len__(self):
        return len(self.ideals)


def pullback(ideal: IdealPresentation, phi: FormalMap) -> IdealPresentation:
    """The ideal generated by the compositions g(Phi) of the generators."""
    if phi.dimension != ideal.dimension:
        raise DimensionError("map dimension differs from ideal dimension")
    return IdealPresentation(
        ideal.dimension, [compose(g, phi) for g in ideal.generators]
    )


@dataclass(frozen=True)
class IndexVerdict:
    label: str
    ok: bool
    # (direction, generator position) for the first failing membership;
    # direction is "pullback" (right generator through Phi) or "inverse"
    # (left generator through Phi^-1).
    failure: Optional[tuple[str, int]] = None


@dataclass(frozen=True)
class MatchVerdict:
    label: str
    partner: Optional[str]
    tried: int = 0


@dataclass(frozen=True)
class EquivalenceReport:
    ok: bool
    order: int
    mode: str
    per_index: tuple[IndexVerdict, ...] = ()
    left_matching: tuple[MatchVerdict, ...] = ()
    right_matching: tuple[MatchVerdict, ...] = ()

    def __bool__(self):
        return self.ok


def _check_order_inputs(phi: FormalMap, left: GermFamily, right: GermFamily, k: int):
    if k < 1:
        raise ValueError("equivalence order must be at least 1")
    if left.dimension != right.dimension or phi.dimension != left.dimension:
        raise DimensionError("families and map must share one dimension")
    for fam in (left, right):
        bound = fam.generator_truncation
        if bound is not None and bound < k:
            raise PrecisionError(
                f"order-{k} check needs generator truncations >= {k}, have {bound}"
            )
    if phi.truncation < k - 1:
        raise PrecisionError(
            f"order-{k} check needs the map known to degree {k - 1}"
        )


def _pair_order_k(
    phi: FormalMap,
    phi_inv: FormalMap,
    left: IdealPresentation,
    right: IdealPresentation,
    k: int,
) -> tuple[bool, Optional[tuple[str, int]]]:
    for pos, g in enumerate(right.generators):
        if not jet_membership(compose(g, phi), left, k):
            return False, ("pullback", pos)
    for pos, g in enumerate(left.generators):
        if not jet_membership(compose(g, phi_inv), right, k):
            return False, ("inverse", pos)
    return True, None


def pair_order_k(
    phi: FormalMap,
    left: IdealPresentation,
    right: IdealPresentation,
    k: int,
    phi_inv: Optional[FormalMap] = None,
) -> bool:
    """Two-sided order-k equivalence verdict for a single pair of ideals."""
    if phi_inv is None:
        phi_inv = phi.inverse()
    ok, _ = _pair_order_k(phi, phi_inv, left, right, k)
    return ok


def is_order_k_equivalence(
    phi: FormalMap,
    left: GermFamily,
    right: GermFamily,
    k: int,
    *,
    left_pool: Optional[GermFamily] = None,
    right_pool: Optional[GermFamily] = None,
    candidates: Optional[CandidateHook] = None,
) -> EquivalenceReport:
    """Order-k equivalence verdict between two families of ideals.

    Family mode matches members by position (labels must agree).  Set mode
    asks for a partner for every left member among the right pool and for
    every right member among the left pool; pools default to the families
    themselves and must contain them as label prefixes.
    """
    _check_order_inputs(phi, left, right, k)
    mode = left.mode
    if right.mode != mode:
        raise ValueError("families disagree about the comparison mode")
    phi_inv = phi.inverse()

    if mode == "family":
        if left.labels != right.labels:
            raise ValueError("family mode requires identical label sequences")
        verdicts = []
        ok = True
        for label, ileft, iright in zip(left.labels, left.ideals, right.ideals):
            good, failure = _pair_order_k(phi, phi_inv, ileft, iright, k)
            ok = ok and good
            verdicts.append(IndexVerdict(label=label, ok=good, failure=failure))
        return EquivalenceReport(ok=ok, order=k, mode=mode, per_index=tuple(verdicts))

    left_pool = left_pool or left
    right_pool = right_pool or right
    for fam, pool in ((left, left_pool), (right, right_pool)):
        if pool.labels[: len(fam.labels)] != fam.labels:
            raise ValueError("a candidate pool must extend its family as a prefix")
    _check_order_inputs(phi, left_pool, right_pool, k)

    memo: dict[tuple[int, int], bool] = {}

    def pair(i: int, j: int) -> bool:
        key = (i, j)
        hit = memo.get(key)
        if hit is None:
            hit, _ = _pair_order_k(
                phi, phi_inv, left_pool.ideals[i], right_pool.ideals[j], k
            )
            memo[key] = hit
        return hit

    def search(side: str, index: int, pool: GermFamily) -> MatchVerdict:
        order = candidates(side, index) if candidates is not None else None
        if order is None:
            order = range(len(pool))
        tried = 0
        fam = left if side == "left" else right
        for j in order:
            tried += 1
            hit = pair(index, j) if side == "left" else pair(j, index)
            if hit:
                return MatchVerdict(
                    label=fam.labels[index], partner=pool.labels[j], tried=tried
                )
        return MatchVerdict(label=fam.labels[index], partner=None, tried=tried)

    left_matches = tuple(search("left", i, right_pool) for i in range(len(left)))
    right_matches = tuple(search("right", j, left_pool) for j in range(len(right)))
    ok = all(m.partner is not None for m in left_matches + right_matches)
    return EquivalenceReport(
        ok=ok,
        order=k,
        mode=mode,
        left_matching=left_matches,
        right_matching=right_matches,
    )


def jet_coset_membership(
    lam: FormalMap, left: GermFamily, right: GermFamily
) -> EquivalenceReport:
    """Whether the degree-k jet of lam carries the right jet ideals onto
    the left ones, for k = lam.truncation.

    This is the jet-level counterpart of order-(k+1) equivalence: the
    pullback of each right member's degree-k jet ideal must equal the left
    member's degree-k jet ideal as a subspace of the jet space.
    """
    k = lam.truncation
    if left.dimension != right.dimension or lam.dimension != left.dimension:
        raise DimensionError("families and map must share one dimension")
    for fam in (left, right):
        bound = fam.generator_truncation
        if bound is not None and bound < k:
            raise PrecisionError(
                f"jet comparison at degree {k} needs truncations >= {k}"
            )

    def pair_jets(ileft: IdealPresentation, iright: IdealPresentation) -> bool:
        pulled = pullback(iright, lam)
        return pulled.jet_space(k) == ileft.jet_space(k)

    mode = left.mode
    if right.mode != mode:
        raise ValueError("families disagree about the comparison mode")
    if mode == "family":
        if left.labels != right.labels:
            raise ValueError("family mode requires identical label sequences")
        verdicts = []
        ok = True
        for label, ileft, iright in zip(left.labels, left.ideals, right.ideals):
            good = pair_jets(ileft, iright)
            ok = ok and good
            verdicts.append(IndexVerdict(label=label, ok=good))
        return EquivalenceReport(ok=ok, order=k, mode=mode, per_index=tuple(verdicts))

    memo: dict[tuple[int, int], bool] = {}

    def pair(i: int, j: int) -> bool:
        key = (i, j)
        hit = memo.get(key)
        if hit is None:
            hit = pair_jets(left.ideals[i], right.ideals[j])
            memo[key] = hit
        return hit

    left_matches = []
    for i, label in enumerate(left.labels):
        partner = next(
            (right.labels[j] for j in range(len(right)) if pair(i, j)), None
        )
        left_matches.append(MatchVerdict(label=label, partner=partner))
    right_matches = []
    for j, label in enumerate(right.labels):
        partner = next(
            (left.labels[i] for i in range(len(left)) if pair(i, j)), None
        )
        right_matches.append(MatchVerdict(label=label, partner=partner))
    ok = all(m.partner is not None for m in left_matches + right_matches)
    return EquivalenceReport(
        ok=ok,
        order=k,
        mode=mode,
        left_matching=tuple(left_matches),
        right_matching=tuple(right_matches),
    )


@dataclass(frozen=True)
class HorizonReport:
    bound: int
    per_order: tuple[tuple[int, bool], ...]
    first_failure: Optional[int]

    @property
    def holds_up_to_bound(self) -> bool:
        return self.first_failure is None

    def __bool__(self):
        return self.first_failure is None


def equivalence_horizon(
    left: GermFamily,
    right: GermFamily,
    phi: FormalMap,
    bound: int,
    *,
    left_pool: Optional[GermFamily] = None,
    right_pool: Optional[GermFamily] = None,
    candidates: Optional[CandidateHook] = None,
) -> HorizonReport:
    """Scan orders k = 1..bound and report each verdict individually.

    Set-mode matchings may genuinely differ from one order to the next, so
    every order is evaluated on its own rather than bisected.
    """
    if bound < 1:
        raise ValueError("horizon bound must be at least 1")
    per_order = []
    first_failure = None
    for k in range(1, bound + 1):
        report = is_order_k_equivalence(
            phi,
            left,
            right,
            k,
            left_pool=left_pool,
            right_pool=right_pool,
            candidates=candidates,
        )
        per_order.append((k, report.ok))
        if not report.ok and first_failure is None:
            first_failure = k
    return HorizonReport(
        bound=bound, per_order=tuple(per_order), first_failure=first_failure
    )
