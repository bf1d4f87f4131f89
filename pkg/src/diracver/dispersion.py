"""Multiplicity constraints on the positive free-particle energy.

For a monic degree-n energy polynomial with unknown coefficients
``c_0 .. c_{n-1}``, demanding that ``E_p = +sqrt(s)`` (``s = p.p + m^2``)
be a root of multiplicity r for every momentum splits each derivative
condition into an even and an odd part in ``E_p``, giving ``2r`` linear
equations over the field of rational functions of s.  Exact Gaussian
elimination then either

* solves them, with every forced coefficient verified to be a genuine
  polynomial in s (:class:`ForcedCoefficientSolution`), or
* exhibits a nonzero polynomial in s that the system forces to vanish
  identically (:class:`InfeasibilityCertificate`), an impossibility proof
  for that (n, r) pair.

``check_dispersion`` applies the same even/odd reduction to the concrete
characteristic polynomial of a matrix set and reports the residuals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, perm
from typing import Sequence, Union

from .algebra import (
    EPoly,
    MultiPoly,
    dispersion_modulus,
    reduce_at_dispersion,
    render_fraction,
)
from .symmat import CharPoly, MatrixSet, build_hamiltonian, char_poly

__all__ = [
    "SPoly",
    "RatFunc",
    "DegeneracyRequirement",
    "Assignment",
    "ForcedCoefficientSolution",
    "InfeasibilityCertificate",
    "DispersionReport",
    "solve_forced_coefficients",
    "factorized_spectrum",
    "check_dispersion",
    "render_spoly",
    "render_solution",
    "render_certificate",
]


class SPoly:
    """Univariate polynomial in the formal symbol s, with Fraction coefficients.

    s stands for the squared positive energy p1^2 + p2^2 + p3^2 + m^2.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Sequence[int | Fraction] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def zero(cls) -> "SPoly":
        return cls(())

    @classmethod
    def one(cls) -> "SPoly":
        return cls((1,))

    @classmethod
    def s(cls) -> "SPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, power: int, coeff: int | Fraction = 1) -> "SPoly":
        return cls((0,) * power + (coeff,))

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else Fraction(0)

    def leading(self) -> Fraction:
        if not self._c:
            raise ValueError("zero polynomial has no leading coefficient")
        return self._c[-1]

    def __add__(self, other: "SPoly") -> "SPoly":
        size = max(len(self._c), len(other._c))
        return SPoly([self.coeff(k) + other.coeff(k) for k in range(size)])

    def __sub__(self, other: "SPoly") -> "SPoly":
        size = max(len(self._c), len(other._c))
        return SPoly([self.coeff(k) - other.coeff(k) for k in range(size)])

    def __mul__(self, other: "SPoly | int | Fraction") -> "SPoly":
        if isinstance(other, (int, Fraction)):
            return SPoly([x * other for x in self._c])
        if self.is_zero or other.is_zero:
            return SPoly.zero()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a:
                for j, b in enumerate(other._c):
                    out[i + j] += a * b
        return SPoly(out)

    __rmul__ = __mul__

    def __neg__(self) -> "SPoly":
        return SPoly([-x for x in self._c])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def divmod(self, other: "SPoly") -> tuple["SPoly", "SPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        quot = [Fraction(0)] * max(0, len(self._c) - len(other._c) + 1)
        rem = list(self._c)
        dlc = other.leading()
        dd = other.degree
        for k in range(len(rem) - 1, dd - 1, -1):
            if rem[k] == 0:
                continue
            factor = rem[k] / dlc
            quot[k - dd] = factor
            for i, b in enumerate(other._c):
                rem[k - dd + i] -= factor * b
        return SPoly(quot), SPoly(rem)

    @staticmethod
    def gcd(a: "SPoly", b: "SPoly") -> "SPoly":
        """Monic greatest common divisor."""
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        if a.is_zero:
            return a
        return a * (1 / a.leading())

    def normalized_integer(self) -> "SPoly":
        """Scale by the lcm of coefficient denominators; make the leading coefficient positive."""
        if self.is_zero:
            return self
        scale = Fraction(lcm(*(x.denominator for x in self._c)))
        if self.leading() < 0:
            scale = -scale
        return self * scale

    def substitute(self, value: Fraction) -> Fraction:
        total = Fraction(0)
        for c in reversed(self._c):
            total = total * value + c
        return total

    def to_multipoly(self, massless: bool = False) -> MultiPoly:
        """Substitute s -> p1^2 + p2^2 + p3^2 + m^2 (or its massless version)."""
        s = dispersion_modulus(massless)
        out = MultiPoly.zero()
        power = MultiPoly.constant(1)
        for c in self._c:
            if c:
                out = out + power * c
            power = power * s
        return out

    def __str__(self) -> str:
        return render_spoly(self)

    def __repr__(self) -> str:
        return f"SPoly({render_spoly(self)!r})"


class RatFunc:
    """Rational function in s: num/den with monic, coprime denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: SPoly, den: SPoly | None = None):
        if den is None:
            den = SPoly.one()
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            den = SPoly.one()
        else:
            g = SPoly.gcd(num, den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            scale = 1 / den.leading()
            num = num * scale
            den = den * scale
        self.num = num
        self.den = den

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den == SPoly.one()

    def as_spoly(self) -> SPoly:
        if not self.is_polynomial:
            raise ValueError(f"{self} is not a polynomial in s")
        return self.num

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __str__(self) -> str:
        if self.is_polynomial:
            return render_spoly(self.num)
        return f"({render_spoly(self.num)})/({render_spoly(self.den)})"

    __repr__ = __str__


@dataclass(frozen=True)
class DegeneracyRequirement:
    """Demand r linearly independent positive-energy plane waves in dimension n."""

    n: int
    r: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= 4:
            raise ValueError(f"dimension {self.n} outside the supported range 1..4")
        if self.r < 1:
            raise ValueError("multiplicity must be at least 1")
        if self.r > self.n:
            raise ValueError(f"multiplicity {self.r} exceeds the polynomial degree {self.n}")


def _derivative_name(j: int) -> str:
    return "P" + "'" * j


@dataclass(frozen=True)
class _Condition:
    """One linear condition: sum_k coeffs[k]*c_k + const = 0, with provenance."""

    coeffs: tuple[SPoly, ...]
    const: SPoly
    derivative_order: int
    parity: str  # "even" or "odd"

    @property
    def origin(self) -> str:
        return f"the {self.parity} part of {_derivative_name(self.derivative_order)} at E = E_p"


def multiplicity_conditions(req: DegeneracyRequirement) -> list[_Condition]:
    """The 2r even/odd conditions on c_0..c_{n-1} from P, P', ..., P^(r-1) at E_p."""
    n, r = req.n, req.r
    rows: list[_Condition] = []
    for j in range(r):
        parts = {
            "even": ([SPoly.zero()] * n, SPoly.zero()),
            "odd": ([SPoly.zero()] * n, SPoly.zero()),
        }
        for k in range(j, n + 1):
            t = k - j
            half, is_odd = divmod(t, 2)
            contrib = SPoly.monomial(half, perm(k, j))
            coeffs, const = parts["odd" if is_odd else "even"]
            if k == n:
                const = const + contrib
                parts["odd" if is_odd else "even"] = (coeffs, const)
            else:
                coeffs[k] = coeffs[k] + contrib
        for parity in ("even", "odd"):
            coeffs, const = parts[parity]
            rows.append(_Condition(tuple(coeffs), const, j, parity))
    return rows


@dataclass(frozen=True)
class Assignment:
    """Value of one forced coefficient: a polynomial in s plus terms in free c_j."""

    constant: SPoly
    linear: tuple[tuple[int, SPoly], ...] = ()

    @property
    def is_constant(self) -> bool:
        return not self.linear

    def render(self) -> str:
        pieces: list[tuple[bool, str]] = []
        if not self.constant.is_zero:
            pieces.extend(_spoly_sign_terms(self.constant))
        for j, poly in self.linear:
            negative, body = _spoly_factor_body(poly)
            pieces.append((negative, f"{body}c{j}"))
        if not pieces:
            return "0"
        negative, body = pieces[0]
        out = f"-{body}" if negative else body
        for negative, body in pieces[1:]:
            out += f" - {body}" if negative else f" + {body}"
        return out


@dataclass(frozen=True)
class ForcedCoefficientSolution:
    """Forced characteristic-polynomial coefficients for a feasible (n, r)."""

    requirement: DegeneracyRequirement
    assignments: dict[int, Assignment]
    free: frozenset[int]

    @property
    def is_complete(self) -> bool:
        return not self.free

    def constants(self) -> dict[int, SPoly]:
        """Coefficient values as polynomials in s; only valid for complete solutions."""
        if not self.is_complete:
            raise ValueError("solution has free coefficients")
        return {k: a.constant for k, a in self.assignments.items()}


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Proof that no matrix set of dimension n meets the multiplicity demand.

    ``witness`` is a nonzero polynomial in s that the linear conditions force
    to vanish identically.
    """

    requirement: DegeneracyRequirement
    witness: SPoly
    narrative: str

    def __post_init__(self) -> None:
        if self.witness.is_zero:
            raise ValueError("certificate witness must be a nonzero polynomial")


SolveResult = Union[ForcedCoefficientSolution, InfeasibilityCertificate]


def solve_forced_coefficients(req: DegeneracyRequirement) -> SolveResult:
    """Solve the 2r multiplicity conditions for c_0..c_{n-1}, or certify failure.

    Elimination runs over the field of rational functions in s with pivots
    chosen lowest-index unknown first, so results are reproducible; any
    coefficient whose solution is not a polynomial in s is reported as
    infeasible with the offending expression.
    """
    conditions = multiplicity_conditions(req)
    n = req.n
    rows = [
        {
            "coeffs": [RatFunc(c) for c in cond.coeffs],
            "rhs": RatFunc(-cond.const),
            "cond": cond,
        }
        for cond in conditions
    ]

    pivot_row_of: dict[int, int] = {}
    consumed = [False] * len(rows)
    for col in range(n):
        pivot_idx = next(
            (i for i, row in enumerate(rows) if not consumed[i] and not row["coeffs"][col].is_zero),
            None,
        )
        if pivot_idx is None:
            continue
        consumed[pivot_idx] = True
        pivot_row_of[col] = pivot_idx
        pivot = rows[pivot_idx]
        for i, row in enumerate(rows):
            if i == pivot_idx or row["coeffs"][col].is_zero:
                continue
            factor = row["coeffs"][col] / pivot["coeffs"][col]
            row["coeffs"] = [a - factor * b for a, b in zip(row["coeffs"], pivot["coeffs"])]
            row["rhs"] = row["rhs"] - factor * pivot["rhs"]

    for i, row in enumerate(rows):
        if consumed[i]:
            continue
        if all(c.is_zero for c in row["coeffs"]) and not row["rhs"].is_zero:
            # 0 = rhs: a nonzero polynomial in s is forced to vanish
            witness = (-row["rhs"].num).normalized_integer()
            cond = row["cond"]
            return InfeasibilityCertificate(req, witness, _contradiction_narrative(cond, witness))

    free = frozenset(range(n)) - pivot_row_of.keys()
    assignments: dict[int, Assignment] = {}
    for col in sorted(pivot_row_of):
        row = rows[pivot_row_of[col]]
        pivot_coeff = row["coeffs"][col]
        constant = row["rhs"] / pivot_coeff
        linear_parts: list[tuple[int, RatFunc]] = []
        for j in sorted(free):
            if not row["coeffs"][j].is_zero:
                linear_parts.append((j, -(row["coeffs"][j] / pivot_coeff)))
        offender = next(
            (rf for rf in [constant] + [rf for _, rf in linear_parts] if not rf.is_polynomial),
            None,
        )
        if offender is not None:
            witness = offender.den.normalized_integer()
            narrative = (
                f"solving for c{col} yields {offender}, which is not a polynomial in s; "
                "no polynomial coefficients can satisfy the conditions"
            )
            return InfeasibilityCertificate(req, witness, narrative)
        assignments[col] = Assignment(
            constant.as_spoly(),
            tuple((j, rf.as_spoly()) for j, rf in linear_parts),
        )

    solution = ForcedCoefficientSolution(req, assignments, free)
    residuals = verify_solution(req, solution)
    if residuals:
        raise RuntimeError(f"internal solver error: back-substitution residuals {residuals}")
    return solution


def _contradiction_narrative(cond: _Condition, witness: SPoly) -> str:
    if witness.degree >= 1:
        return (
            f"{cond.origin} reduces to {render_spoly(witness)} = 0, "
            "which forces E_p = 0 for all momenta"
        )
    return (
        f"{cond.origin} reduces to {render_spoly(witness)} = 0, "
        "and a nonzero constant cannot vanish"
    )


def verify_solution(req: DegeneracyRequirement, sol: ForcedCoefficientSolution) -> list[str]:
    """Substitute the assignments back into every condition; list nonzero residuals."""
    problems: list[str] = []
    for cond in multiplicity_conditions(req):
        const = cond.const
        linear: dict[int, SPoly] = {}
        for k, coeff in enumerate(cond.coeffs):
            if coeff.is_zero:
                continue
            if k in sol.assignments:
                a = sol.assignments[k]
                const = const + coeff * a.constant
                for j, lin in a.linear:
                    linear[j] = linear.get(j, SPoly.zero()) + coeff * lin
            else:
                linear[k] = linear.get(k, SPoly.zero()) + coeff
        if not const.is_zero:
            problems.append(f"{cond.origin}: residual {render_spoly(const)}")
        for j, poly in sorted(linear.items()):
            if not poly.is_zero:
                problems.append(f"{cond.origin}: residual ({render_spoly(poly)})*c{j}")
    return problems


def factorized_spectrum(sol: ForcedCoefficientSolution) -> str:
    """Verify that the forced coefficients give exactly (E^2 - s)^r and render it.

    Only complete solutions with n = 2r factor this way; anything else is
    rejected, as is any tampered solution that fails the exact identity.
    """
    req = sol.requirement
    if not sol.is_complete:
        raise ValueError("incomplete solution: free coefficients remain")
    if req.n != 2 * req.r:
        raise ValueError(f"(n={req.n}, r={req.r}) does not factor as a power of (E^2 - s)")
    constants = sol.constants()
    coeffs = [constants.get(k, SPoly.zero()) for k in range(req.n)] + [SPoly.one()]

    target = [SPoly.one()]
    base = [-SPoly.s(), SPoly.zero(), SPoly.one()]  # E^2 - s
    for _ in range(req.r):
        out = [SPoly.zero()] * (len(target) + 2)
        for i, a in enumerate(target):
            for j, b in enumerate(base):
                out[i + j] = out[i + j] + a * b
        target = out

    for k, (got, want) in enumerate(zip(coeffs, target)):
        if got != want:
            raise ValueError(
                f"factorization mismatch at E^{k}: got {render_spoly(got)}, "
                f"expected {render_spoly(want)}"
            )
    if req.r == 1:
        return "(E - E_p)*(E + E_p)"
    return f"(E - E_p)^{req.r}*(E + E_p)^{req.r}"


@dataclass(frozen=True)
class DispersionReport:
    """Even/odd residuals of P, P', ..., P^(r-1) at the positive energy."""

    multiplicity: int
    massless: bool
    labels: tuple[str, ...]
    residuals: tuple[MultiPoly, ...]
    char: CharPoly
    passed: bool


def check_dispersion(mset: MatrixSet, r: int, massless: bool = False) -> DispersionReport:
    """Reduce the characteristic polynomial and its first r-1 derivatives at E_p.

    With ``massless`` set, the mass is frozen to zero in the hamiltonian and
    the reduction runs modulo E^2 - (p1^2 + p2^2 + p3^2).
    """
    if not 1 <= r <= mset.n:
        raise ValueError(f"multiplicity {r} outside 1..{mset.n}")
    cp = char_poly(build_hamiltonian(mset))
    poly = EPoly([c.at_zero_mass() for c in cp.poly.coeffs]) if massless else cp.poly
    labels: list[str] = []
    residuals: list[MultiPoly] = []
    q = poly
    for j in range(r):
        pair = reduce_at_dispersion(q, massless)
        labels.extend([f"{_derivative_name(j)} even", f"{_derivative_name(j)} odd"])
        residuals.extend([pair.even_part, pair.odd_part])
        q = q.derivative()
    passed = all(res.is_zero for res in residuals)
    return DispersionReport(r, massless, tuple(labels), tuple(residuals), cp, passed)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _spoly_sign_terms(p: SPoly) -> list[tuple[bool, str]]:
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if c == 0:
            continue
        negative = c < 0
        mag = abs(c)
        s_factor = "" if k == 0 else ("s" if k == 1 else f"s^{k}")
        if s_factor and mag == 1:
            body = s_factor
        elif s_factor:
            body = f"{render_fraction(mag)}*{s_factor}"
        else:
            body = render_fraction(mag)
        terms.append((negative, body))
    return terms


def _spoly_factor_body(p: SPoly) -> tuple[bool, str]:
    """Render p as a multiplicative prefix for a symbol (e.g. '-s*' for -s)."""
    terms = _spoly_sign_terms(p)
    if len(terms) == 1:
        negative, body = terms[0]
        return negative, "" if body == "1" else f"{body}*"
    return False, f"({render_spoly(p)})*"


def render_spoly(p: SPoly) -> str:
    terms = _spoly_sign_terms(p)
    if not terms:
        return "0"
    negative, body = terms[0]
    out = f"-{body}" if negative else body
    for negative, body in terms[1:]:
        out += f" - {body}" if negative else f" + {body}"
    return out


def render_solution(sol: ForcedCoefficientSolution) -> list[str]:
    """One line per forced coefficient, highest index first, then any free ones."""
    lines = []
    for k in range(sol.requirement.n - 1, -1, -1):
        if k in sol.assignments:
            lines.append(f"c{k} = {sol.assignments[k].render()}")
    if sol.free:
        lines.append("free: " + ", ".join(f"c{j}" for j in sorted(sol.free)))
    return lines


def render_certificate(cert: InfeasibilityCertificate) -> list[str]:
    req = cert.requirement
    return [
        f"infeasible: n = {req.n}, multiplicity {req.r}",
        f"forced: {render_spoly(cert.witness)} = 0 for all momenta",
        f"note: {cert.narrative}",
    ]
