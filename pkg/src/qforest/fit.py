"""Exact interpolation of count sequences in q and the probes built on it.

Everything is Fraction arithmetic.  Probes always fit on the lowest-q points
and use the remaining ones as held-out checks, so the verdict depends only on
the set of points, not their order.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path


class FitError(ValueError):
    pass


class InsufficientPoints(FitError):
    def __init__(self, message: str, classes=None):
        super().__init__(message)
        self.classes = classes or {}


class RationalPoly:
    """Polynomial in q with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return RationalPoly(x + y for x, y in zip(a, b))

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            return RationalPoly(c * other for c in self.coeffs)
        out = [Fraction(0)] * max(0, len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __repr__(self):
        return f"RationalPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            body = str(a) if (a != 1 or i == 0) else ""
            if body and mono:
                body += "*"
            parts.append((sign, body + mono))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {t}" for s, t in parts[1:]])


def interpolate(points) -> RationalPoly:
    """Lagrange interpolation through (q, value) pairs, exactly."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if not pts:
        raise FitError("need at least one point")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise FitError("duplicate abscissae")
    total = RationalPoly()
    for i, (xi, yi) in enumerate(pts):
        basis = RationalPoly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * RationalPoly([-xj, 1])
                denom *= xi - xj
        total = total + basis * (yi / denom)
    return total


@dataclass
class ProbeResult:
    polynomial: RationalPoly | None = None
    witness: tuple | None = None

    @property
    def is_polynomial(self) -> bool:
        return self.polynomial is not None


def _sorted_points(points):
    pts = sorted((int(x), int(y)) for x, y in points)
    if len({x for x, _ in pts}) != len(pts):
        raise FitError("duplicate abscissae")
    return pts


def polynomiality_probe(points, degree_bound: int) -> ProbeResult:
    pts = _sorted_points(points)
    if len(pts) < degree_bound + 2:
        raise InsufficientPoints(
            f"{len(pts)} points cannot test degree <= {degree_bound}; need {degree_bound + 2}")
    poly = interpolate(pts[:degree_bound + 1])
    for x, y in pts[degree_bound + 1:]:
        if poly(x) != y:
            return ProbeResult(witness=(x, y))
    return ProbeResult(polynomial=poly)


@dataclass
class Quasipolynomial:
    modulus: int
    branches: dict

    def __call__(self, q: int) -> Fraction:
        return self.branches[q % self.modulus](q)


def quasipoly_probe(points, max_modulus: int, degree_bound: int) -> Quasipolynomial | None:
    """Smallest modulus N <= max_modulus whose residue-class fits all validate.

    Raises InsufficientPoints when some N is reached whose classes cannot all
    be tested, since a larger modulus could then not be called the smallest.
    """
    pts = _sorted_points(points)
    need = degree_bound + 2
    for N in range(1, max_modulus + 1):
        classes = {r: [p for p in pts if p[0] % N == r] for r in range(N)}
        short = {r: len(c) for r, c in classes.items() if len(c) < need}
        if short:
            raise InsufficientPoints(
                f"modulus {N}: residue classes {sorted(short)} have fewer than {need} points",
                short)
        branches = {}
        for r, cls in classes.items():
            res = polynomiality_probe(cls, degree_bound)
            if not res.is_polynomial:
                break
            branches[r] = res.polynomial
        else:
            return Quasipolynomial(N, branches)
    return None


def integer_coeff_check(poly: RationalPoly) -> bool:
    return all(c.denominator == 1 for c in poly.coeffs)


def read_points_csv(source) -> list[tuple[int, int]]:
    """Read a "q,count" CSV from a path or from text containing newlines."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source):
        text = Path(source).read_text()
    else:
        text = source
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows or [f.strip() for f in rows[0]] != ["q", "count"]:
        raise FitError('values CSV must have header "q,count"')
    try:
        return [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise FitError(f"bad values row: {exc}") from None


def write_points_csv(points) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["q", "count"])
    for x, y in points:
        w.writerow([x, y])
    return out.getvalue()
