"""Finite-order equivalence of self-map germs and formal vector fields.

Self-maps transform by conjugation G = Phi o F o Phi^-1; vector fields
transform by the pushforward (DPhi . xi) o Phi^-1.  Order-k closeness of
two maps or fields means every component of the difference vanishes to
order at least k at the origin.  F itself is never required to be
invertible; only the conjugating map is.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DimensionError, PrecisionError
from .series import FormalMap, FormalSeries


class VectorField:
    """A formal vector field vanishing at the origin, one coefficient
    series per coordinate direction."""

    __slots__ = ("_comps", "_trunc")

    def __init__(self, components: Sequence[FormalSeries]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        n = len(comps)
        for c in comps:
            if c.dimension != n:
                raise DimensionError(
                    f"field on {n} variables has a component in dimension {c.dimension}"
                )
            if c.constant_term():
                raise ValueError("vector field components must vanish at 0")
        trunc = min(c.truncation for c in comps)
        comps = tuple(c.truncate(trunc) for c in comps)
        object.__setattr__(self, "_comps", comps)
        object.__setattr__(self, "_trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("VectorField is immutable")

    @property
    def dimension(self) -> int:
        return len(self._comps)

    @property
    def truncation(self) -> int:
        return self._trunc

    @property
    def components(self) -> tuple[FormalSeries, ...]:
        return self._comps

    def truncate(self, degree: int) -> "VectorField":
        return VectorField([c.truncate(degree) for c in self._comps])

    def __eq__(self, other):
        if isinstance(other, VectorField):
            return self._comps == other._comps
        return NotImplemented

    def __repr__(self):
        return f"VectorField({list(self._comps)!r})"


def conjugate(f: FormalMap, phi: FormalMap) -> FormalMap:
    """Phi o F o Phi^-1; F need not be invertible."""
    if f.dimension != phi.dimension:
        raise DimensionError("map dimensions differ")
    return phi.compose(f).compose(phi.inverse())


def pushforward_field(xi: VectorField, phi: FormalMap) -> VectorField:
    """(DPhi . xi) o Phi^-1, exact one degree below the inputs.

    Differentiating Phi costs one degree of precision, so the result
    carries truncation min(truncations) - 1.
    """
    if xi.dimension != phi.dimension:
        raise DimensionError("field and map dimensions differ")
    n = phi.dimension
    phi_inv = phi.inverse()
    comps = []
    for i in range(n):
        row = phi.components[i]
        acc: Optional[FormalSeries] = None
        for j in range(n):
            partial = row.derivative(j)
            term = partial * xi.components[j]
            acc = term if acc is None else acc + term
        comps.append(acc.substitute(phi_inv.components))
    return VectorField(comps)


@dataclass(frozen=True)
class ComponentVerdict:
    label: str
    ok: bool
    # Order of the first discrepancy (lowest degree present in the
    # difference), None when the difference vanishes identically within
    # the comparison window.
    discrepancy_order: Optional[int] = None


@dataclass(frozen=True)
class DynamicsReport:
    ok: bool
    order: int
    per_index: tuple[ComponentVerdict, ...]

    def __bool__(self):
        return self.ok


def _difference_verdict(
    label: str, lefts: Sequence[FormalSeries], rights: Sequence[FormalSeries], k: int
) -> ComponentVerdict:
    worst: Optional[int] = None
    for a, b in zip(lefts, rights):
        diff = a - b
        if diff.truncation < k - 1:
            raise PrecisionError(
                f"order-{k} comparison needs degree {k - 1}, have {diff.truncation}"
            )
        o = diff.order()
        if o is not None and (worst is None or o < worst):
            worst = o
    ok = worst is None or worst >= k
    return ComponentVerdict(label=label, ok=ok, discrepancy_order=worst)


def _labels(count: int, labels: Optional[Sequence[str]]) -> list[str]:
    if labels is None:
        return [str(i) for i in range(count)]
    labels = list(labels)
    if len(labels) != count:
        raise ValueError("label count differs from family size")
    return labels


def is_order_k_conjugacy(
    phi: FormalMap,
    lefts: Sequence[FormalMap],
    rights: Sequence[FormalMap],
    k: int,
    labels: Optional[Sequence[str]] = None,
) -> DynamicsReport:
    """Whether each right map agrees with the conjugate of its left
    partner to order k, index by index."""
    if k < 1:
        raise ValueError("conjugacy order must be at least 1")
    if len(lefts) != len(rights):
        raise ValueError("families differ in length")
    names = _labels(len(lefts), labels)
    verdicts = []
    ok = True
    for label, f, g in zip(names, lefts, rights):
        transported = conjugate(f, phi)
        verdict = _difference_verdict(
            label, g.components, transported.components, k
        )
        ok = ok and verdict.ok
        verdicts.append(verdict)
    return DynamicsReport(ok=ok, order=k, per_index=tuple(verdicts))


def is_order_k_field_equivalence(
    phi: FormalMap,
    lefts: Sequence[VectorField],
    rights: Sequence[VectorField],
    k: int,
    labels: Optional[Sequence[str]] = None,
) -> DynamicsReport:
    """Whether each right field agrees with the pushforward of its left
    partner to order k, index by index."""
    if k < 1:
        raise ValueError("field equivalence order must be at least 1")
    if len(lefts) != len(rights):
        raise ValueError("families differ in length")
    names = _labels(len(lefts), labels)
    verdicts = []
    ok = True
    for label, xi, eta in zip(names, lefts, rights):
        transported = pushforward_field(xi, phi)
        verdict = _difference_verdict(
            label, eta.components, transported.components, k
        )
        ok = ok and verdict.ok
        verdicts.append(verdict)
    return DynamicsReport(ok=ok, order=k, per_index=tuple(verdicts))
