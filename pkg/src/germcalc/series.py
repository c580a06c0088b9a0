"""Truncated formal power series and formal maps.

A FormalSeries carries its ambient variable count, an explicit truncation
degree K, and a sparse term table; it represents a residue class modulo
terms of degree > K.  Every binary operation propagates the minimum of the
operand truncations, and nothing in this module invents a default K.

A FormalMap is a tuple of series with zero constant term, one per target
coordinate, sharing a truncation.  Composition and degreewise inversion
are exact through the carried truncation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, InversionError, PrecisionError
from .monomial import MultiIndex
from .scalars import GaussianRational, as_gaussian, coerce_scalar

Scalar = Fraction | GaussianRational


def _as_exponent(dimension: int, key) -> MultiIndex:
    mi = key if isinstance(key, MultiIndex) else MultiIndex(key)
    if mi.dimension != dimension:
        raise DimensionError(
            f"exponent {mi} does not live in dimension {dimension}"
        )
    return mi


class FormalSeries:
    """A formal power series known exactly up to its truncation degree."""

    __slots__ = ("_n", "_trunc", "_terms")

    def __init__(self, dimension: int, truncation: int, terms=None):
        if dimension < 1:
            raise ValueError("dimension must be at least 1")
        if truncation < 0:
            raise ValueError("truncation degree must be a natural number")
        table: dict[MultiIndex, Scalar] = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for key, value in items:
                mi = _as_exponent(dimension, key)
                if mi.degree > truncation:
                    continue
                c = coerce_scalar(value)
                if mi in table:
                    c = table[mi] + c
                if c:
                    table[mi] = c
                elif mi in table:
                    del table[mi]
        object.__setattr__(self, "_n", dimension)
        object.__setattr__(self, "_trunc", truncation)
        object.__setattr__(self, "_terms", table)

    def __setattr__(self, name, value):
        raise AttributeError("FormalSeries is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, dimension: int, truncation: int) -> "FormalSeries":
        return cls(dimension, truncation)

    @classmethod
    def constant(cls, dimension: int, truncation: int, value) -> "FormalSeries":
        return cls(dimension, truncation, {(0,) * dimension: value})

    @classmethod
    def variable(cls, dimension: int, truncation: int, index: int) -> "FormalSeries":
        if not 0 <= index < dimension:
            raise ValueError(f"variable index {index} out of range")
        exp = tuple(1 if j == index else 0 for j in range(dimension))
        return cls(dimension, truncation, {exp: 1})

    @classmethod
    def monomial(cls, dimension: int, truncation: int, exponents, coefficient=1) -> "FormalSeries":
        return cls(dimension, truncation, {tuple(exponents): coefficient})

    # -- inspection ---------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._n

    @property
    def truncation(self) -> int:
        return self._trunc

    @property
    def terms(self) -> dict[MultiIndex, Scalar]:
        """The sparse term table; treat as read-only."""
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, key) -> Scalar:
        mi = _as_exponent(self._n, key)
        return self._terms.get(mi, Fraction(0))

    def constant_term(self) -> Scalar:
        return self._terms.get(MultiIndex((0,) * self._n), Fraction(0))

    def sorted_terms(self) -> list[tuple[MultiIndex, Scalar]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key)

    def initial_exponent(self) -> Optional[MultiIndex]:
        """Exponent of the order-smallest term, None for the zero series."""
        if not self._terms:
            return None
        return min(self._terms, key=lambda m: m.sort_key)

    def order(self) -> Optional[int]:
        """Degree of the lowest term, None for the zero series."""
        if not self._terms:
            return None
        return min(m.degree for m in self._terms)

    def vanishes_to_order(self, k: int) -> bool:
        """True iff every stored term has degree >= k.

        Decides membership in m^k provided k - 1 <= truncation.
        """
        if k - 1 > self._trunc:
            raise PrecisionError(
                f"cannot test vanishing to order {k} at truncation {self._trunc}"
            )
        return all(m.degree >= k for m in self._terms)

    # -- ring operations ----------------------------------------------------

    def _check_compatible(self, other: "FormalSeries"):
        if self._n != other._n:
            raise DimensionError(
                f"series dimensions differ: {self._n} vs {other._n}"
            )

    def __add__(self, other):
        if not isinstance(other, FormalSeries):
            other = self._promote(other)
            if other is None:
                return NotImplemented
        self._check_compatible(other)
        trunc = min(self._trunc, other._trunc)
        table = {m: c for m, c in self._terms.items() if m.degree <= trunc}
        for m, c in other._terms.items():
            if m.degree > trunc:
                continue
            s = table.get(m, 0) + c
            if s:
                table[m] = s
            elif m in table:
                del table[m]
        out = FormalSeries(self._n, trunc)
        object.__setattr__(out, "_terms", table)
        return out

    def _promote(self, value) -> Optional["FormalSeries"]:
        try:
            c = coerce_scalar(value)
        except TypeError:
            return None
        return FormalSeries.constant(self._n, self._trunc, c)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        out = FormalSeries(self._n, self._trunc)
        object.__setattr__(out, "_terms", {m: -c for m, c in self._terms.items()})
        return out

    def __sub__(self, other):
        if not isinstance(other, FormalSeries):
            promoted = self._promote(other)
            if promoted is None:
                return NotImplemented
            other = promoted
        return self + (-other)

    def __rsub__(self, other):
        promoted = self._promote(other)
        if promoted is None:
            return NotImplemented
        return promoted + (-self)

    def __mul__(self, other):
        if isinstance(other, FormalSeries):
            self._check_compatible(other)
            trunc = min(self._trunc, other._trunc)
            table: dict[MultiIndex, Scalar] = {}
            if len(self._terms) > len(other._terms):
                left, right = other, self
            else:
                left, right = self, other
            for ma, ca in left._terms.items():
                da = ma.degree
                if da > trunc:
                    continue
                for mb, cb in right._terms.items():
                    if da + mb.degree > trunc:
                        continue
                    key = ma + mb
                    s = table.get(key, 0) + ca * cb
                    if s:
                        table[key] = s
                    elif key in table:
                        del table[key]
            out = FormalSeries(self._n, trunc)
            object.__setattr__(out, "_terms", table)
            return out
        try:
            c = coerce_scalar(other)
        except TypeError:
            return NotImplemented
        if not c:
            return FormalSeries(self._n, self._trunc)
        out = FormalSeries(self._n, self._trunc)
        object.__setattr__(out, "_terms", {m: v * c for m, v in self._terms.items()})
        return out

    def __rmul__(self, other):
        return self.__mul__(other)

    def truncate(self, degree: int) -> "FormalSeries":
        """Discard terms of degree > degree; degree may not exceed the
        carried truncation (that would claim precision we do not have)."""
        if degree > self._trunc:
            raise PrecisionError(
                f"cannot truncate at {degree}: series only known up to {self._trunc}"
            )
        if degree == self._trunc:
            return self
        out = FormalSeries(self._n, degree)
        object.__setattr__(
            out, "_terms", {m: c for m, c in self._terms.items() if m.degree <= degree}
        )
        return out

    def jet(self, degree: int) -> "FormalSeries":
        """The degree-jet, an alias for truncation at that degree."""
        return self.truncate(degree)

    def homogeneous_part(self, degree: int) -> "FormalSeries":
        out = FormalSeries(self._n, self._trunc)
        object.__setattr__(
            out, "_terms", {m: c for m, c in self._terms.items() if m.degree == degree}
        )
        return out

    def derivative(self, index: int) -> "FormalSeries":
        """Partial derivative; the result is exact one degree lower."""
        if not 0 <= index < self._n:
            raise ValueError(f"variable index {index} out of range")
        if self._trunc == 0:
            raise PrecisionError("cannot differentiate a series truncated at 0")
        table: dict[MultiIndex, Scalar] = {}
        for m, c in self._terms.items():
            e = m[index]
            if e == 0:
                continue
            exp = list(m.exponents)
            exp[index] = e - 1
            table[MultiIndex(exp)] = c * e
        out = FormalSeries(self._n, self._trunc - 1)
        object.__setattr__(out, "_terms", table)
        return out

    def evaluate(self, point: Sequence) -> Scalar:
        """Exact evaluation of the stored polynomial representative."""
        if len(point) != self._n:
            raise DimensionError("evaluation point has wrong length")
        values = [coerce_scalar(p) for p in point]
        total: Scalar = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for v, e in zip(values, m.exponents):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def substitute(self, components: Sequence["FormalSeries"]) -> "FormalSeries":
        """Substitute one series per variable; components must have zero
        constant term and live in a common dimension."""
        if len(components) != self._n:
            raise DimensionError(
                f"need {self._n} substitution components, got {len(components)}"
            )
        if not components:
            raise ValueError("no components")
        m = components[0].dimension
        trunc = min([self._trunc] + [c.truncation for c in components])
        for comp in components:
            if comp.dimension != m:
                raise DimensionError("substitution components have mixed dimensions")
            if comp.constant_term():
                raise ValueError("substitution components must vanish at 0")
        one = FormalSeries.constant(m, trunc, 1)
        comps = [c.truncate(trunc) for c in components]
        powers: list[list[FormalSeries]] = [[one] for _ in range(self._n)]
        acc = FormalSeries.zero(m, trunc)
        for mi, c in self.sorted_terms():
            if mi.degree > trunc:
                continue
            term = None
            for j, e in enumerate(mi.exponents):
                if e == 0:
                    continue
                cache = powers[j]
                while len(cache) <= e:
                    cache.append(cache[-1] * comps[j])
                term = cache[e] if term is None else term * cache[e]
            if term is None:
                term = one
            acc = acc + c * term
        return acc

    # -- comparisons --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, FormalSeries):
            return (
                self._n == other._n
                and self._trunc == other._trunc
                and self._terms == other._terms
            )
        return NotImplemented

    def __repr__(self):
        items = ", ".join(f"{m}: {c}" for m, c in self.sorted_terms())
        return f"FormalSeries(n={self._n}, K={self._trunc}, {{{items}}})"


def compose(f: FormalSeries, phi: "FormalMap") -> FormalSeries:
    """f after phi; exact through min(truncations)."""
    if phi.dimension != f.dimension:
        raise DimensionError(
            f"cannot compose a {f.dimension}-variable series with a map on "
            f"{phi.dimension} variables"
        )
    return f.substitute(phi.components)


class FormalMap:
    """A formal self-map germ fixing the origin, one series per coordinate."""

    __slots__ = ("_comps", "_trunc")

    def __init__(self, components: Sequence[FormalSeries]):
        comps = tuple(components)
        if not comps:
            raise ValueError("a formal map needs at least one component")
        n = len(comps)
        for c in comps:
            if c.dimension != n:
                raise DimensionError(
                    f"map on {n} variables has a component in dimension {c.dimension}"
                )
            if c.constant_term():
                raise ValueError("formal map components must vanish at 0")
        trunc = min(c.truncation for c in comps)
        comps = tuple(c.truncate(trunc) for c in comps)
        object.__setattr__(self, "_comps", comps)
        object.__setattr__(self, "_trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("FormalMap is immutable")

    @classmethod
    def identity(cls, dimension: int, truncation: int) -> "FormalMap":
        return cls(
            [FormalSeries.variable(dimension, truncation, i) for i in range(dimension)]
        )

    @property
    def dimension(self) -> int:
        return len(self._comps)

    @property
    def truncation(self) -> int:
        return self._trunc

    @property
    def components(self) -> tuple[FormalSeries, ...]:
        return self._comps

    def truncate(self, degree: int) -> "FormalMap":
        return FormalMap([c.truncate(degree) for c in self._comps])

    def linear_matrix(self) -> list[list[Scalar]]:
        n = self.dimension
        rows = []
        for comp in self._comps:
            row = []
            for j in range(n):
                exp = tuple(1 if t == j else 0 for t in range(n))
                row.append(comp.coefficient(exp))
            rows.append(row)
        return rows

    @property
    def is_invertible(self) -> bool:
        return _invert_matrix(self.linear_matrix()) is not None

    def compose(self, other: "FormalMap") -> "FormalMap":
        """self after other."""
        if other.dimension != self.dimension:
            raise DimensionError("cannot compose maps of different dimensions")
        return FormalMap([c.substitute(other.components) for c in self._comps])

    def inverse(self) -> "FormalMap":
        """Compositional inverse through the carried truncation.

        Solved degree by degree: the linear part is inverted exactly, then
        each homogeneous error term is cancelled through the inverse linear
        part.
        """
        n = self.dimension
        inv_linear = _invert_matrix(self.linear_matrix())
        if inv_linear is None:
            raise InversionError("formal map has singular linear part")
        trunc = self._trunc
        psi = [
            _linear_combination(inv_linear[i], n, trunc) for i in range(n)
        ]
        identity = FormalMap.identity(n, trunc)
        for degree in range(2, trunc + 1):
            current = FormalMap(psi)
            error = [
                (c.substitute(current.components) - identity.components[i]).homogeneous_part(degree)
                for i, c in enumerate(self._comps)
            ]
            if all(e.is_zero for e in error):
                continue
            for i in range(n):
                correction = FormalSeries.zero(n, trunc)
                for j in range(n):
                    coeff = inv_linear[i][j]
                    if coeff:
                        correction = correction + coeff * error[j]
                psi[i] = psi[i] - correction
        return FormalMap(psi)

    def __eq__(self, other):
        if isinstance(other, FormalMap):
            return self._comps == other._comps
        return NotImplemented

    def __repr__(self):
        return f"FormalMap({list(self._comps)!r})"


def _linear_combination(coeffs: Sequence[Scalar], dimension: int, truncation: int) -> FormalSeries:
    terms = {}
    for j, c in enumerate(coeffs):
        if c:
            terms[tuple(1 if t == j else 0 for t in range(dimension))] = c
    return FormalSeries(dimension, truncation, terms)


def _invert_matrix(rows: list[list[Scalar]]) -> Optional[list[list[Scalar]]]:
    """Exact Gauss-Jordan inverse over Q or Q(i); None if singular."""
    n = len(rows)
    work = [list(r) for r in rows]
    result = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            return None
        work[col], work[pivot_row] = work[pivot_row], work[col]
        result[col], result[pivot_row] = result[pivot_row], result[col]
        pivot = work[col][col]
        work[col] = [v / pivot for v in work[col]]
        result[col] = [v / pivot for v in result[col]]
        for r in range(n):
            if r == col:
                continue
            factor = work[r][col]
            if factor:
                work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
                result[r] = [a - factor * b for a, b in zip(result[r], result[col])]
    return result


def map_compose(phi: FormalMap, psi: FormalMap) -> FormalMap:
    """phi after psi."""
    return phi.compose(psi)


def map_invert(phi: FormalMap) -> FormalMap:
    return phi.inverse()


def realify(f: FormalSeries) -> tuple[FormalSeries, FormalSeries]:
    """Split a series over Q(i) in z_1..z_n into real and imaginary parts
    over Q in the 2n real variables x_1, y_1, ..., x_n, y_n, substituting
    z_j = x_j + i*y_j.  Exact: the substitution is linear, so no degree is
    lost to truncation."""
    n = f.dimension
    m = 2 * n
    trunc = f.truncation
    i_unit = GaussianRational(0, 1)
    components = []
    for j in range(n):
        x = tuple(1 if t == 2 * j else 0 for t in range(m))
        y = tuple(1 if t == 2 * j + 1 else 0 for t in range(m))
        components.append(FormalSeries(m, trunc, {x: Fraction(1), y: i_unit}))
    expanded = f.substitute(components)
    real_terms: dict[MultiIndex, Fraction] = {}
    imag_terms: dict[MultiIndex, Fraction] = {}
    for mi, c in expanded.terms.items():
        g = as_gaussian(c)
        if g.real:
            real_terms[mi] = g.real
        if g.imag:
            imag_terms[mi] = g.imag
    re = FormalSeries(m, trunc)
    im = FormalSeries(m, trunc)
    object.__setattr__(re, "_terms", real_terms)
    object.__setattr__(im, "_terms", imag_terms)
    return re, im


def realify_map(phi: FormalMap) -> FormalMap:
    """Realify each component; coordinates interleave as x_1, y_1, ..."""
    comps: list[FormalSeries] = []
    for c in phi.components:
        re, im = realify(c)
        comps.append(re)
        comps.append(im)
    return FormalMap(comps)
