"""Torus data: weight vectors, fixed flags, eigenweights.

The diagonal torus acts on projective three-space with integer weights
(w0, w1, w2, w3).  Localization needs those weights generic enough that
no two monomials of the same degree (up to three) share a weight; the
validator below enforces exactly that.  Fixed flags are the 24 full
coordinate flags, listed in a specific deterministic order so that
parallel runs fold results identically.
"""

from fractions import Fraction
from itertools import combinations_with_replacement


class WeightError(ValueError):
    """Weight vector fails the genericity tests; collisions listed."""

    def __init__(self, collisions):
        self.collisions = list(collisions)
        lines = "; ".join(self.collisions)
        super().__init__("weight vector is too special: %s" % lines)


class DivByZeroWeight(ZeroDivisionError):
    """An equivariant denominator vanished at the chosen weights."""


def validate_weights(w):
    """Require distinct sums of one, two and three weights.

    Repetitions are allowed inside a sum (w_i + w_i is a valid pair), so
    these are the degree <= 3 monomial weights.  Raises WeightError with
    every colliding pair of sums named.
    """
    w = tuple(w)
    if len(w) != 4:
        raise ValueError("expected four weights")
    collisions = []
    for size in (1, 2, 3):
        seen = {}
        for combo in combinations_with_replacement(range(4), size):
            total = sum(w[i] for i in combo)
            label = "+".join("w%d" % i for i in combo)
            if total in seen:
                collisions.append(
                    "%s = %s = %s" % (seen[total], label, total))
            else:
                seen[total] = label
        # All combos of a size checked against each other before growing.
    if collisions:
        raise WeightError(collisions)
    return w


def enumerate_fixed_flags(w=None):
    """The 24 torus-fixed coordinate flags point-in-plane-in-space.

    Order is deterministic: outer index runs over the flag's point
    coordinate, the remaining coordinates are taken in descending order
    and unfolded in a fixed interleave.  If a weight vector is supplied
    it is validated first.
    """
    if w is not None:
        validate_weights(w)
    flags = []
    for a in range(4):
        rem = sorted((i for i in range(4) if i != a), reverse=True)
        for b in range(3):
            p1 = rem[2 - b]
            rem2 = [i for i in rem if i != p1]
            for c in range(2):
                flags.append((a, p1, rem2[c], rem2[1 - c]))
    return flags


# Index pairs (i, j), i < j in flag position, for the six tangent
# directions of the flag variety at a fixed flag.
_FLAG_TANGENT_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def flag_tangent_class(flag):
    """Six tangent eigenweights of the flag variety at a fixed flag.

    Returned as EigenWeight instances in global coordinates; the weight
    at pair (i, j) is w[flag[j]] - w[flag[i]].
    """
    out = []
    for i, j in _FLAG_TANGENT_PAIRS:
        coeffs = [0, 0, 0, 0]
        coeffs[flag[j]] += 1
        coeffs[flag[i]] -= 1
        out.append(EigenWeight(coeffs))
    return out


def flag_tangent_product(flag, w):
    """Product of the six flag tangent weights at a weight vector."""
    prod = Fraction(1)
    for ew in flag_tangent_class(flag):
        prod *= ew.evaluate(w)
    return prod


class EigenWeight:
    """Integer combination of the four coordinate weights.

    Stored as a coefficient 4-tuple.  An eigenweight written in a flag's
    local frame is converted to global coordinates by permuting slots,
    and evaluated at a weight vector by a dot product.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != 4:
            raise ValueError("expected four coefficients")
        self.coeffs = coeffs

    @classmethod
    def zero(cls):
        return cls((0, 0, 0, 0))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other):
        return EigenWeight(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return EigenWeight(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self):
        return EigenWeight(-c for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, EigenWeight):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def evaluate(self, w):
        """Dot product with a weight vector (local frame)."""
        return sum((Fraction(c) * wi for c, wi in zip(self.coeffs, w)),
                   Fraction(0))

    def to_global(self, flag):
        """Reinterpret local slot i as global coordinate flag[i]."""
        out = [0, 0, 0, 0]
        for i, c in enumerate(self.coeffs):
            out[flag[i]] += c
        return EigenWeight(out)

    def evaluate_at_flag(self, flag, w):
        """Evaluate the local eigenweight after placing it on a flag."""
        return sum((Fraction(c) * w[flag[i]]
                    for i, c in enumerate(self.coeffs)), Fraction(0))

    def __str__(self):
        return format_weight(self)

    def __repr__(self):
        return "EigenWeight(%r)" % (self.coeffs,)


def format_weight(ew):
    """Monomial-fraction rendering: (1,-2,1,0) -> 'x0*x2/x1^2'."""
    num = []
    den = []
    for i, c in enumerate(ew.coeffs):
        if c > 0:
            num.append("x%d" % i if c == 1 else "x%d^%d" % (i, c))
        elif c < 0:
            den.append("x%d" % i if c == -1 else "x%d^%d" % (i, -c))
    if not num and not den:
        return "1"
    top = "*".join(num) if num else "1"
    if not den:
        return top
    return "%s/%s" % (top, "*".join(den))


def parse_weight(text):
    """Inverse of format_weight for the fixture tables."""
    text = text.strip()
    coeffs = [0, 0, 0, 0]
    if text == "1":
        return EigenWeight(coeffs)
    if "/" in text:
        top, bottom = text.split("/", 1)
    else:
        top, bottom = text, ""
    for part, sign in ((top, 1), (bottom, -1)):
        if not part or part == "1":
            continue
        for factor in part.split("*"):
            factor = factor.strip()
            if "^" in factor:
                name, e = factor.split("^")
                e = int(e)
            else:
                name, e = factor, 1
            if not name.startswith("x"):
                raise ValueError("bad weight factor %r" % factor)
            coeffs[int(name[1:])] += sign * e
    return EigenWeight(coeffs)


class DualClass:
    """Truncated class a + b*h with h*h = 0.

    ``a`` is a Fraction; ``b`` may be a Fraction or any value supporting
    addition and scaling, which lets the h-part carry linear expressions
    in unknown twist degrees.  Inversion needs a nonzero pure part and
    raises DivByZeroWeight otherwise.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = a if isinstance(a, Fraction) else Fraction(a)
        self.b = b

    def __add__(self, other):
        if isinstance(other, DualClass):
            return DualClass(self.a + other.a, self.b + other.b)
        return DualClass(self.a + other, self.b)

    __radd__ = __add__

    def __neg__(self):
        return DualClass(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, DualClass):
            return DualClass(self.a - other.a, self.b - other.b)
        return DualClass(self.a - other, self.b)

    def __mul__(self, other):
        if isinstance(other, DualClass):
            return DualClass(self.a * other.a,
                             self.b * other.a + other.b * self.a)
        return DualClass(self.a * other, self.b * other)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = DualClass(Fraction(1), 0)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self):
        if self.a == 0:
            raise DivByZeroWeight("pure part vanished, cannot invert")
        inv = Fraction(1) / self.a
        return DualClass(inv, self.b * (-inv * inv))

    def __truediv__(self, other):
        if isinstance(other, DualClass):
            return self * other.inverse()
        return DualClass(self.a / other, self.b * Fraction(1, 1) / other)

    def h_coefficient(self):
        return self.b

    def __eq__(self, other):
        if isinstance(other, DualClass):
            return self.a == other.a and self.b == other.b
        return self.a == other and (self.b == 0 or
                                    (hasattr(self.b, "is_zero")
                                     and self.b.is_zero()))

    def __repr__(self):
        return "DualClass(%s, %s)" % (self.a, self.b)
