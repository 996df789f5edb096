"""Exact multivariate polynomial arithmetic over the rationals.

Polynomials are sparse dictionaries mapping monomials to nonzero
Fractions.  A monomial is a sorted tuple of (variable index, exponent)
pairs with positive exponents; the empty tuple is the constant monomial.
The variable alphabet is fixed up front: projective coordinates, fiber
parameters for every blowup stage, weight symbols, a hyperplane symbol
and parametrization symbols.  Keeping the alphabet closed lets us store
monomials as index tuples and compare them cheaply.
"""

from fractions import Fraction


# Closed variable alphabet.  Order matters: it defines the graded-lex
# term order used by exact division and by the printer.
VARIABLE_NAMES = (
    "x0", "x1", "x2", "x3",
    "a0", "a1", "a2", "a3", "a4", "a5", "a6",
    "b0", "b1", "b2", "b3",
    "u1", "u2", "u3",
    "s0", "s1", "s2", "s3", "s4", "s5",
    "t0", "t1", "t2", "t3", "t4",
    "v0", "v1", "v2", "v3", "v4",
    "z0", "z1", "z2", "z3", "z4", "z5",
    "w0", "w1", "w2", "w3",
    "h",
    "y0", "y1", "y2", "y3",
)

VARIABLE_INDEX = {name: i for i, name in enumerate(VARIABLE_NAMES)}


class NotDivisible(ArithmeticError):
    """Raised when exact division leaves a remainder.

    Carries enough context to say which division failed when raised
    from inside a blowup pipeline.
    """

    def __init__(self, message, context=None):
        super().__init__(message)
        self.context = context


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError("expected an int or Fraction, got %r" % (value,))


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for idx, e in m2:
        exps[idx] = exps.get(idx, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(mono):
    return sum(e for _, e in mono)


def _mono_key(mono):
    # Graded lex: compare total degree first, then exponents by
    # variable order (higher exponent on an earlier variable wins).
    vec = [0] * len(VARIABLE_NAMES)
    for idx, e in mono:
        vec[idx] = e
    return (_mono_degree(mono), tuple(vec))


class Polynomial:
    """Immutable-by-convention sparse polynomial with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    # ---- constructors ----

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def constant(cls, value):
        value = _as_fraction(value)
        if value == 0:
            return cls({})
        return cls({(): value})

    @classmethod
    def variable(cls, name):
        if name not in VARIABLE_INDEX:
            raise KeyError("unknown variable %r" % name)
        return cls({((VARIABLE_INDEX[name], 1),): Fraction(1)})

    @classmethod
    def monomial(cls, exponents, coeff=1):
        """Build coeff * prod(var**exp) from a {name: exp} mapping."""
        coeff = _as_fraction(coeff)
        if coeff == 0:
            return cls({})
        pairs = []
        for name, e in exponents.items():
            if e < 0:
                raise ValueError("negative exponent for %s" % name)
            if e > 0:
                pairs.append((VARIABLE_INDEX[name], e))
        return cls({tuple(sorted(pairs)): coeff})

    # ---- basic structure ----

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and () in self.terms:
            return self.terms[()]
        raise ValueError("polynomial is not constant: %s" % self)

    def variables(self):
        seen = set()
        for mono in self.terms:
            for idx, _ in mono:
                seen.add(VARIABLE_NAMES[idx])
        return seen

    def total_degree(self):
        if not self.terms:
            return -1
        return max(_mono_degree(m) for m in self.terms)

    def leading(self):
        """Leading (monomial, coefficient) in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms, key=_mono_key)
        return mono, self.terms[mono]

    # ---- arithmetic ----

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            acc = terms.get(mono, Fraction(0)) + c
            if acc == 0:
                terms.pop(mono, None)
            else:
                terms[mono] = acc
        return Polynomial(terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _as_fraction(other)
            if other == 0:
                return Polynomial.zero()
            return Polynomial({m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                acc = terms.get(mono, Fraction(0)) + c1 * c2
                if acc == 0:
                    terms.pop(mono, None)
                else:
                    terms[mono] = acc
        return Polynomial(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # ---- substitution and evaluation ----

    def substitute(self, mapping):
        """Simultaneously replace variables by polynomials or rationals.

        mapping: {variable name: Polynomial | Fraction | int}.  All
        replacements happen with respect to the original polynomial, so
        substituting x0 -> x1, x1 -> x0 swaps the two variables.
        """
        subs = {}
        for name, val in mapping.items():
            idx = VARIABLE_INDEX[name]
            if isinstance(val, Polynomial):
                subs[idx] = val
            else:
                subs[idx] = Polynomial.constant(val)
        if not subs:
            return self
        result = Polynomial.zero()
        power_cache = {}
        for mono, coeff in self.terms.items():
            factor = Polynomial.constant(coeff)
            plain = []
            for idx, e in mono:
                if idx in subs:
                    key = (idx, e)
                    if key not in power_cache:
                        power_cache[key] = subs[idx] ** e
                    factor = factor * power_cache[key]
                else:
                    plain.append((idx, e))
            if plain:
                factor = factor * Polynomial({tuple(plain): Fraction(1)})
            result = result + factor
        return result

    def evaluate(self, mapping):
        """Substitute and require a rational result."""
        return self.substitute(mapping).constant_value()

    def partial(self, name):
        """Partial derivative with respect to one variable."""
        idx = VARIABLE_INDEX[name]
        terms = {}
        for mono, coeff in self.terms.items():
            for pos, (vi, e) in enumerate(mono):
                if vi == idx:
                    new = list(mono)
                    if e == 1:
                        del new[pos]
                    else:
                        new[pos] = (vi, e - 1)
                    mono2 = tuple(new)
                    acc = terms.get(mono2, Fraction(0)) + coeff * e
                    if acc == 0:
                        terms.pop(mono2, None)
                    else:
                        terms[mono2] = acc
                    break
        return Polynomial(terms)

    def coefficients_in(self, names):
        """Collect coefficients with respect to a set of variables.

        Returns {exponent tuple over names: Polynomial in the remaining
        variables}.  The exponent tuple is aligned with the order of
        ``names``.
        """
        idxs = [VARIABLE_INDEX[n] for n in names]
        pos = {idx: p for p, idx in enumerate(idxs)}
        out = {}
        for mono, coeff in self.terms.items():
            key = [0] * len(idxs)
            rest = []
            for vi, e in mono:
                if vi in pos:
                    key[pos[vi]] = e
                else:
                    rest.append((vi, e))
            key = tuple(key)
            piece = out.get(key)
            if piece is None:
                out[key] = Polynomial({tuple(rest): coeff})
            else:
                out[key] = piece + Polynomial({tuple(rest): coeff})
        return {k: v for k, v in out.items() if not v.is_zero()}

    # ---- division ----

    def exact_divide(self, divisor, context=None):
        """Divide by another polynomial, demanding zero remainder.

        Standard monomial-by-monomial reduction against the divisor's
        graded-lex leading term.  Raises NotDivisible the moment a
        leading term fails to reduce, which for an actual multiple never
        happens.
        """
        if isinstance(divisor, (int, Fraction)):
            d = _as_fraction(divisor)
            if d == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / d)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return Polynomial.zero()
        dmono, dcoeff = divisor.leading()
        dexp = dict(dmono)
        remainder = self
        quotient = {}
        while not remainder.is_zero():
            mono, coeff = remainder.leading()
            exps = dict(mono)
            qexp = []
            ok = True
            for vi, e in dexp.items():
                if exps.get(vi, 0) < e:
                    ok = False
                    break
            if not ok:
                raise NotDivisible(
                    "%s does not divide %s" % (divisor, self), context=context)
            for vi, e in exps.items():
                r = e - dexp.get(vi, 0)
                if r:
                    qexp.append((vi, r))
            qmono = tuple(sorted(qexp))
            qcoeff = coeff / dcoeff
            quotient[qmono] = quotient.get(qmono, Fraction(0)) + qcoeff
            remainder = remainder - Polynomial({qmono: qcoeff}) * divisor
        return Polynomial({m: c for m, c in quotient.items() if c != 0})

    def proportional(self, other):
        """Ratio self / other if the two differ by a rational scalar.

        Returns the Fraction ratio, or None when no single ratio works.
        Two zero polynomials count as proportional with ratio 1; a zero
        against a nonzero does not.
        """
        if self.is_zero() and other.is_zero():
            return Fraction(1)
        if self.is_zero() or other.is_zero():
            return None
        m1, c1 = self.leading()
        m2, c2 = other.leading()
        if m1 != m2:
            return None
        ratio = c1 / c2
        if self == other * ratio:
            return ratio
        return None

    # ---- text ----

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return "Polynomial(%s)" % format_poly(self)


def format_poly(poly):
    """Deterministic rendering, graded-lex descending."""
    if poly.is_zero():
        return "0"
    parts = []
    for mono in sorted(poly.terms, key=_mono_key, reverse=True):
        coeff = poly.terms[mono]
        factors = []
        for idx, e in mono:
            if e == 1:
                factors.append(VARIABLE_NAMES[idx])
            else:
                factors.append("%s^%d" % (VARIABLE_NAMES[idx], e))
        body = "*".join(factors)
        mag = abs(coeff)
        if not body:
            piece = str(mag)
        elif mag == 1:
            piece = body
        else:
            piece = "%s*%s" % (mag, body)
        parts.append((coeff < 0, piece))
    out = []
    for i, (neg, piece) in enumerate(parts):
        if i == 0:
            out.append("-" + piece if neg else piece)
        else:
            out.append(" - " + piece if neg else " + " + piece)
    return "".join(out)


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take_name(self):
        start = self.pos
        while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos]

    def take_int(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])


def parse_poly(text):
    """Parse '+', '-', '*', '^', parentheses, integers and fractions.

    Accepts things like ``3*x0^2*x1 - 1/2*b1^3`` and ``(1/8)*(s0*b1 + 4)``.
    Division is only allowed immediately after an integer literal, so
    fractions parse but general rational functions are rejected.
    """
    toks = _Tokens(text)
    poly = _parse_sum(toks)
    if toks.peek() is not None:
        raise ValueError("trailing input in %r at position %d" % (text, toks.pos))
    return poly


def _parse_sum(toks):
    ch = toks.peek()
    negate = False
    if ch in ("+", "-"):
        toks.pos += 1
        negate = ch == "-"
    acc = _parse_product(toks)
    if negate:
        acc = -acc
    while True:
        ch = toks.peek()
        if ch == "+":
            toks.pos += 1
            acc = acc + _parse_product(toks)
        elif ch == "-":
            toks.pos += 1
            acc = acc - _parse_product(toks)
        else:
            return acc


def _parse_product(toks):
    acc = _parse_power(toks)
    while True:
        ch = toks.peek()
        if ch == "*":
            toks.pos += 1
            acc = acc * _parse_power(toks)
        else:
            return acc


def _parse_power(toks):
    base = _parse_atom(toks)
    if toks.peek() == "^":
        toks.pos += 1
        if toks.peek() is None or not toks.peek().isdigit():
            raise ValueError("expected integer exponent")
        return base ** toks.take_int()
    return base


def _parse_atom(toks):
    ch = toks.peek()
    if ch is None:
        raise ValueError("unexpected end of input")
    if ch == "(":
        toks.pos += 1
        inner = _parse_sum(toks)
        if toks.peek() != ")":
            raise ValueError("unbalanced parenthesis")
        toks.pos += 1
        return inner
    if ch.isdigit():
        num = toks.take_int()
        if toks.peek() == "/":
            toks.pos += 1
            if toks.peek() is None or not toks.peek().isdigit():
                raise ValueError("expected denominator")
            den = toks.take_int()
            return Polynomial.constant(Fraction(num, den))
        return Polynomial.constant(num)
    if ch.isalpha():
        name = toks.take_name()
        return Polynomial.variable(name)
    raise ValueError("unexpected character %r" % ch)


def fraction_to_json(q):
    """Serialize a Fraction as {'num': ..., 'den': ...} with string fields."""
    q = _as_fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def fraction_from_json(obj):
    return Fraction(int(obj["num"]), int(obj["den"]))
