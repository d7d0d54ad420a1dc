"""Symbolic expression kernel with exact rational constants.

Every expression is an immutable, interned node in canonical form: sums and
products are flattened, constant-folded and sorted by a fixed total order,
like terms and like powers are merged, and products distribute over sums.
Construction goes through the smart constructors (``add``, ``mul``, ``pow_``,
``func`` ...), so any two structurally equal expressions are the *same*
object and ``==`` is identity.

The canonical form is an expanded sum of monomials over "atoms": symbols,
irrational constant powers, and transcendental nodes (exp, ln, sin, cos,
abs, sign, arctan, arctanh).  Hyperbolic functions and tan are rewritten
into exp/sin/cos at construction, which makes most of the identities the
engine cares about collapse structurally to zero.
"""

from __future__ import annotations

import sys
from fractions import Fraction

# canonicalization recurses over deeply composed trees
if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)

__all__ = [
    "Expr",
    "ExprError",
    "const",
    "sym",
    "add",
    "mul",
    "pow_",
    "func",
    "neg",
    "sub",
    "div",
    "simplify",
    "differentiate",
    "substitute",
    "free_symbols",
    "assume_positive",
    "as_coeff_term",
    "ZERO",
    "ONE",
    "MINUS_ONE",
]

# Node kinds.
CONST, SYM, ADD, MUL, POW, FUNC = range(6)

# Functions that may appear as FUNC nodes in canonical form.  tan, sinh and
# cosh are accepted by the constructors but rewritten away.
CANONICAL_FUNCS = ("exp", "ln", "sin", "cos", "abs", "sign", "arctan", "arctanh")

_EXPAND_POW_LIMIT = 64  # refuse to expand (a+b)^n for absurd n


class ExprError(Exception):
    """Raised for domain errors in expression construction or evaluation."""


class Expr:
    """Immutable interned expression node; compare with ``is``/``==``."""

    __slots__ = ("kind", "data", "args", "_key")

    def __init__(self, kind, data, args):
        self.kind = kind
        self.data = data
        self.args = args
        self._key = None

    # Interning makes default identity-based __eq__/__hash__ correct.

    def __reduce__(self):
        return (_raw, (self.kind, self.data, self.args))

    def __repr__(self):
        return f"Expr({render(self)})"

    def __str__(self):
        return render(self)

    @property
    def sort_key(self):
        k = self._key
        if k is None:
            k = self._key = _make_key(self)
        return k

    # Small operator sugar, mainly for tests and interactive use.
    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __pow__(self, other):
        return pow_(self, _coerce(other))

    def __neg__(self):
        return neg(self)


_interned: dict = {}


def _raw(kind, data, args):
    """Intern a node assumed to already be canonical."""
    key = (kind, data, args)
    node = _interned.get(key)
    if node is None:
        node = Expr(kind, data, args)
        _interned[key] = node
    return node


def _coerce(v):
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return const(v)
    raise TypeError(f"cannot coerce {v!r} to Expr")


def const(v) -> Expr:
    if not isinstance(v, Fraction):
        v = Fraction(v)
    return _raw(CONST, v, ())


ZERO = const(0)
ONE = const(1)
MINUS_ONE = const(-1)
HALF = const(Fraction(1, 2))


def sym(name: str) -> Expr:
    return _raw(SYM, name, ())


# ---------------------------------------------------------------------------
# total order on canonical nodes

_KIND_RANK = {CONST: 0, SYM: 1, POW: 2, FUNC: 3, MUL: 4, ADD: 5}


def _make_key(e: Expr):
    r = _KIND_RANK[e.kind]
    if e.kind == CONST:
        return (r, e.data)
    if e.kind == SYM:
        return (r, e.data)
    if e.kind == FUNC:
        return (r, e.data, e.args[0].sort_key)
    if e.kind == POW:
        return (r, e.args[0].sort_key, e.args[1].sort_key)
    return (r,) + tuple(a.sort_key for a in e.args)


# ---------------------------------------------------------------------------
# sums


def as_coeff_term(e: Expr):
    """Split a canonical node into (rational coefficient, non-constant part).

    The second component is None for pure constants.
    """
    if e.kind == CONST:
        return e.data, None
    if e.kind == MUL and e.args[0].kind == CONST:
        rest = e.args[1:]
        return e.args[0].data, (rest[0] if len(rest) == 1 else _raw(MUL, None, rest))
    return Fraction(1), e


def add(*terms) -> Expr:
    return add_list(terms)


def add_list(terms) -> Expr:
    acc: dict = {}
    cacc = Fraction(0)
    stack = list(terms)
    stack.reverse()
    while stack:
        t = stack.pop()
        if not isinstance(t, Expr):
            t = _coerce(t)
        if t.kind == ADD:
            stack.extend(reversed(t.args))
            continue
        if t.kind == CONST:
            cacc += t.data
            continue
        c, term = as_coeff_term(t)
        prev = acc.get(term)
        acc[term] = c if prev is None else prev + c
    out = []
    for term, c in acc.items():
        if c == 0:
            continue
        if c == 1:
            out.append(term)
        elif term.kind == MUL:
            out.append(_raw(MUL, None, (const(c),) + term.args))
        else:
            out.append(_raw(MUL, None, (const(c), term)))
    if cacc != 0:
        out.append(const(cacc))
    if not out:
        return ZERO
    if len(out) == 1:
        return out[0]
    out.sort(key=lambda n: n.sort_key)
    return _raw(ADD, None, tuple(out))


def content_split(e: Expr):
    """Write e = c * rest with c rational and rest content-normalized.

    For sums the content is the gcd of the term coefficients, signed so the
    first term of rest has positive coefficient; used to normalize power
    bases so that e.g. (x**2 - t**2)**-1 and (t**2 - x**2)**-1 merge.
    """
    if e.kind == CONST:
        return e.data, ONE
    if e.kind == MUL and e.args[0].kind == CONST:
        rest = e.args[1:]
        return e.args[0].data, (rest[0] if len(rest) == 1 else _raw(MUL, None, rest))
    if e.kind == ADD:
        from math import gcd

        split = [as_coeff_term(t) for t in e.args]
        num = 0
        den = 1
        for c, _ in split:
            num = gcd(num, abs(c.numerator))
            den = den * c.denominator // gcd(den, c.denominator)
        content = Fraction(num, den)
        # anchor the sign on the term with the smallest coefficient-free
        # part, so that negating e flips the content, not the anchor
        anchor = min(split, key=lambda ct: ct[1].sort_key if ct[1] is not None else ())
        if anchor[0] < 0:
            content = -content
        if content == 1:
            return Fraction(1), e
        inv = 1 / content
        rest = add_list([mul(const(inv), t) for t in e.args])
        return content, rest
    return Fraction(1), e


# ---------------------------------------------------------------------------
# products


def mul(*factors) -> Expr:
    return mul_list(factors)


def mul_list(factors) -> Expr:
    coeff = Fraction(1)
    powmap: dict = {}  # base -> list of exponent Exprs
    exp_args: list = []  # accumulated arguments of exp factors
    sums: list = []  # ADD factors, distributed at the end

    def merge(f: Expr):
        nonlocal coeff
        if f.kind == CONST:
            coeff *= f.data
            return
        if f.kind == MUL:
            for g in f.args:
                merge(g)
            return
        if f.kind == ADD:
            sums.append(f)
            return
        if f.kind == FUNC and f.data == "exp":
            exp_args.append(f.args[0])
            return
        if f.kind == POW:
            base, e = f.args
            powmap.setdefault(base, []).append(e)
            return
        powmap.setdefault(f, []).append(ONE)

    for f in factors:
        if not isinstance(f, Expr):
            f = _coerce(f)
        merge(f)

    if coeff == 0:
        return ZERO

    if exp_args:
        ef = func("exp", add_list(exp_args))
        if ef is not ONE:
            if ef.kind == FUNC and ef.data == "exp":
                powmap.setdefault(ef, []).append(ONE)
            else:
                # exp() simplified into something else (e.g. a power)
                sub = mul_list([ef])
                if sub.kind == ADD:
                    sums.append(sub)
                elif sub.kind == CONST:
                    coeff *= sub.data
                else:
                    for b, es in _factor_powers(sub).items():
                        if b is None:
                            coeff *= es
                        else:
                            powmap.setdefault(b, []).extend(es)

    # abs/sign interplay: sign(a)**2 == 1 and sign(a)*|a|**p == a*|a|**(p-1).
    _normalize_sign_abs(powmap)

    parts = []
    redo = []  # factors whose canonical base changed; need a second merge pass
    for base, exps in powmap.items():
        e = add_list(exps)
        if e is ZERO:
            continue
        node = pow_(base, e)
        if node is ONE:
            continue
        if node.kind == CONST:
            coeff *= node.data
            if coeff == 0:
                return ZERO
        elif node.kind in (ADD, MUL):
            redo.append(node)
        elif node.kind == POW and node.args[0] is not base:
            redo.append(node)
        elif node.kind == FUNC and node.data == "exp" and base.kind != FUNC:
            redo.append(node)
        else:
            parts.append(node)

    if coeff == 0:
        return ZERO

    if redo:
        # a power simplified onto a different base (|a|**2 -> a**2 etc.);
        # run everything through the merge again so equal bases combine
        return mul_list(parts + redo + sums + [const(coeff)])

    bases = [p.args[0] if p.kind == POW else p for p in parts]
    if len(set(bases)) != len(bases):
        merged: dict = {}
        for p in parts:
            b, e = (p.args[0], p.args[1]) if p.kind == POW else (p, ONE)
            merged.setdefault(b, []).append(e)
        parts = []
        for b, es in merged.items():
            node = pow_(b, add_list(es))
            if node is ONE:
                continue
            if node.kind == CONST:
                coeff *= node.data
            else:
                parts.append(node)
        if coeff == 0:
            return ZERO

    if sums:
        # distribute the atomic part over every sum factor
        atomic = _assemble(coeff, parts)
        terms = [atomic]
        for s in sums:
            terms = [mul(t, u) for t in terms for u in s.args]
        return add_list(terms)

    return _assemble(coeff, parts)


def _factor_powers(e: Expr):
    """Decompose a canonical non-sum product into {base: [exps]}, None: coeff."""
    out: dict = {}
    factors = e.args if e.kind == MUL else (e,)
    for f in factors:
        if f.kind == CONST:
            out[None] = out.get(None, Fraction(1)) * f.data
        elif f.kind == POW:
            out.setdefault(f.args[0], []).append(f.args[1])
        elif f.kind == FUNC and f.data == "exp":
            out.setdefault(f, []).append(ONE)
        else:
            out.setdefault(f, []).append(ONE)
    return out


def _normalize_sign_abs(powmap):
    sign_keys = [b for b in powmap if b.kind == FUNC and b.data == "sign"]
    for s in sign_keys:
        e = add_list(powmap[s])
        if e.kind != CONST or e.data.denominator != 1:
            powmap[s] = [e]
            continue
        n = e.data.numerator % 2
        if n == 0:
            del powmap[s]
            continue
        arg = s.args[0]
        ab = func("abs", arg)
        if ab in powmap:
            # sign(a) * |a|**p -> a * |a|**(p-1)
            powmap[ab].append(MINUS_ONE)
            powmap.setdefault(arg, []).append(ONE)
            del powmap[s]
        else:
            powmap[s] = [ONE]


def _assemble(coeff, parts) -> Expr:
    parts = [p for p in parts if p is not ONE]
    if not parts:
        return const(coeff)
    parts.sort(key=lambda n: n.sort_key)
    if coeff != 1:
        parts.insert(0, const(coeff))
    if len(parts) == 1:
        return parts[0]
    return _raw(MUL, None, tuple(parts))


# ---------------------------------------------------------------------------
# powers


def _int_nth_root(n: int, k: int):
    """Exact k-th root of n >= 0, or None."""
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    return None


def _factorize(n: int):
    """Trial-division factorization; the tail beyond 10**4 stays unsplit."""
    out: dict = {}
    for p in (2, 3, 5, 7):
        while n % p == 0:
            n //= p
            out[p] = out.get(p, 0) + 1
    d = 11
    while d * d <= n and d < 10_000:
        while n % d == 0:
            n //= d
            out[d] = out.get(d, 0) + 1
        d += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _const_pow(c: Fraction, q: Fraction) -> Expr:
    """Canonical c**q for positive rational c and non-integer rational q.

    Bases are split into primes and exponents normalized into (0, 1), so
    that e.g. sqrt(2)*sqrt(1/2) collapses to 1 structurally.
    """
    expos: dict = {}
    for p, m in _factorize(c.numerator).items():
        expos[p] = expos.get(p, 0) + m * q
    for p, m in _factorize(c.denominator).items():
        expos[p] = expos.get(p, 0) - m * q
    coeff = Fraction(1)
    parts = []
    for p, qq in sorted(expos.items()):
        n = qq.numerator // qq.denominator  # floor
        r = qq - n
        if n:
            coeff *= Fraction(p) ** n
        if r:
            parts.append(_raw(POW, None, (const(p), const(r))))
    return _assemble(coeff, parts)


def pow_(base, exponent) -> Expr:
    b = _coerce(base)
    e = _coerce(exponent)

    if e.kind == CONST:
        if e.data == 0:
            return ONE
        if e.data == 1:
            return b

    if b.kind == CONST:
        if b.data == 1:
            return ONE
        if e.kind == CONST:
            q = e.data
            if b.data == 0:
                if q > 0:
                    return ZERO
                raise ExprError("0 raised to a non-positive power")
            if q.denominator == 1:
                return const(b.data**q.numerator)
            if b.data > 0:
                return _const_pow(b.data, q)
            raise ExprError(f"negative constant {b.data} raised to non-integer power {q}")

    if b.kind == FUNC:
        if b.data == "exp":
            return func("exp", mul(b.args[0], e))
        if e.kind == CONST and e.data.denominator == 1:
            n = e.data.numerator
            if b.data == "abs" and n % 2 == 0:
                return pow_(b.args[0], e)
            if b.data == "sign":
                return ONE if n % 2 == 0 else b

    if b.kind == POW:
        inner = b.args[1]
        if e.kind == CONST and e.data.denominator == 1:
            return pow_(b.args[0], mul(b.args[1], e))
        if inner.kind == CONST and inner.data.denominator > 1:
            # y**(p/q) is nonnegative wherever defined, so exponents merge
            return pow_(b.args[0], mul(inner, e))

    if b.kind == MUL:
        if e.kind == CONST and e.data.denominator == 1:
            return mul_list([pow_(f, e) for f in b.args])
        c, rest = content_split(b)
        if c > 0 and c != 1:
            return mul(pow_(const(c), e), pow_(rest, e))

    if b.kind == ADD and e.kind == CONST:
        q = e.data
        if q.denominator == 1 and q >= 2:
            n = q.numerator
            if n > _EXPAND_POW_LIMIT:
                raise ExprError(f"refusing to expand a sum to power {n}")
            out = ONE
            sq = b
            while n:
                if n & 1:
                    out = mul(out, sq)
                n >>= 1
                if n:
                    sq = mul(sq, sq)
            return out
        c, rest = content_split(b)
        if q.denominator == 1:
            if c != 1:
                return mul(pow_(const(c), e), _raw(POW, None, (rest, e)))
        elif c > 0 and c != 1:
            return mul(pow_(const(c), e), _raw(POW, None, (rest, e)))

    return _raw(POW, None, (b, e))


# ---------------------------------------------------------------------------
# functions


def _split_negative(arg: Expr):
    """Return g with arg == -g if the content of arg is negative, else None."""
    c, rest = content_split(arg)
    if c < 0:
        return mul(const(-c), rest)
    return None


def _obviously_nonneg(e: Expr) -> bool:
    """Syntactic positivity certificate: even powers, exp, abs, and
    nonnegative combinations thereof."""
    if e.kind == CONST:
        return e.data >= 0
    if e.kind == FUNC:
        return e.data in ("exp", "abs")
    if e.kind == POW:
        p = e.args[1]
        if p.kind == CONST and p.data.denominator == 1 and p.data.numerator % 2 == 0:
            return True
        if p.kind == CONST and p.data.denominator > 1:
            return True  # rational roots are taken on the nonnegative branch
        return _obviously_nonneg(e.args[0])
    if e.kind == ADD:
        return all(_obviously_nonneg(a) for a in e.args)
    if e.kind == MUL:
        return all(_obviously_nonneg(a) for a in e.args)
    return False


def func(name: str, arg) -> Expr:
    arg = _coerce(arg)

    if name == "tan":
        return mul(func("sin", arg), pow_(func("cos", arg), MINUS_ONE))
    if name == "sinh":
        return mul(HALF, sub(func("exp", arg), func("exp", neg(arg))))
    if name == "cosh":
        return mul(HALF, add(func("exp", arg), func("exp", neg(arg))))

    if name == "exp":
        if arg is ZERO:
            return ONE
        # pull algebraic addends out of the exponent:
        #   exp(c ln w)      = w**c
        #   exp(c arctanh w) = ((1+w)/(1-w))**(c/2)
        addends = arg.args if arg.kind == ADD else (arg,)
        algparts = []
        rest = []
        for t in addends:
            c, term = as_coeff_term(t)
            if term is not None and term.kind == FUNC and term.data == "ln":
                algparts.append(pow_(term.args[0], const(c)))
            elif term is not None and term.kind == FUNC and term.data == "arctanh":
                w = term.args[0]
                ratio = mul(add(ONE, w), pow_(add(ONE, neg(w)), MINUS_ONE))
                algparts.append(pow_(ratio, const(c / 2)))
            else:
                rest.append(t)
        if algparts:
            return mul_list(algparts + [func("exp", add_list(rest))])
        return _raw(FUNC, "exp", (arg,))

    if name == "ln":
        if arg is ONE:
            return ZERO
        if arg.kind == FUNC and arg.data == "exp":
            return arg.args[0]
        if arg.kind == CONST and arg.data <= 0:
            raise ExprError(f"ln of non-positive constant {arg.data}")
        return _raw(FUNC, "ln", (arg,))

    if name == "abs":
        if arg.kind == CONST:
            return const(abs(arg.data))
        if arg.kind == FUNC:
            if arg.data == "exp":
                return arg
            if arg.data == "abs":
                return arg
            if arg.data == "sign":
                return ONE
        if arg.kind == POW and arg.args[1].kind == CONST:
            q = arg.args[1].data
            if q.denominator == 1 and q.numerator % 2 == 0:
                return arg
        c, rest = content_split(arg)
        if c != 1:
            if rest is ONE:
                return const(abs(c))
            return mul(const(abs(c)), func("abs", rest))
        if _obviously_nonneg(arg):
            return arg
        return _raw(FUNC, "abs", (arg,))

    if name == "sign":
        if arg.kind == CONST:
            d = arg.data
            return const(0 if d == 0 else (1 if d > 0 else -1))
        if arg.kind == FUNC:
            if arg.data == "exp":
                return ONE
            if arg.data == "abs":
                return ONE
            if arg.data == "sign":
                return arg
        if arg.kind == POW and arg.args[1].kind == CONST:
            q = arg.args[1].data
            if q.denominator == 1:
                if q.numerator % 2 == 0:
                    return ONE
                return func("sign", arg.args[0])
        c, rest = content_split(arg)
        if c != 1:
            s = func("sign", rest) if rest is not ONE else ONE
            return mul(const(1 if c > 0 else -1), s)
        if _obviously_nonneg(arg):
            return ONE  # arguments of sign are nonzero on the working chart
        return _raw(FUNC, "sign", (arg,))

    if name in ("sin", "cos"):
        if arg is ZERO:
            return ZERO if name == "sin" else ONE
        m = _split_negative(arg)
        if m is not None:
            inner = func(name, m)
            return mul(MINUS_ONE, inner) if name == "sin" else inner
        at = _integer_arctan_multiple(arg)
        if at is not None:
            # sin/cos of n*arctan(z) by de Moivre on (1 + i z)**n, scaled
            # by the point's radius (1+z**2)**(-n/2)
            n, z = at
            zc = neg(z) if n < 0 else z
            re, im = ONE, ZERO
            for _ in range(abs(n)):
                re, im = sub(re, mul(im, zc)), add(im, mul(re, zc))
            root = pow_(add(ONE, pow_(z, const(2))), const(Fraction(-abs(n), 2)))
            return mul(im if name == "sin" else re, root)
        return _raw(FUNC, name, (arg,))

    if name in ("arctan", "arctanh"):
        if arg is ZERO:
            return ZERO
        m = _split_negative(arg)
        if m is not None:
            return mul(MINUS_ONE, func(name, m))
        if name == "arctan" and _is_tan_pattern(arg):
            return arg.args[0].args[0] if arg.args[0].kind == FUNC else arg.args[1].args[0]
        return _raw(FUNC, name, (arg,))

    raise ExprError(f"unknown function {name!r}")


def _integer_arctan_multiple(arg: Expr):
    """Match n*arctan(z) with integer n; returns (n, z) or None."""
    if arg.kind == FUNC and arg.data == "arctan":
        return 1, arg.args[0]
    if (
        arg.kind == MUL
        and len(arg.args) == 2
        and arg.args[0].kind == CONST
        and arg.args[0].data.denominator == 1
        and arg.args[1].kind == FUNC
        and arg.args[1].data == "arctan"
    ):
        return arg.args[0].data.numerator, arg.args[1].args[0]
    return None


def _is_tan_pattern(arg: Expr):
    """Match sin(z)*cos(z)**-1, the canonical image of tan(z)."""
    if arg.kind != MUL or len(arg.args) != 2:
        return False
    a, b = arg.args
    if a.kind == POW:
        a, b = b, a
    if not (a.kind == FUNC and a.data == "sin"):
        return False
    if not (b.kind == POW and b.args[1] is MINUS_ONE):
        return False
    c = b.args[0]
    return c.kind == FUNC and c.data == "cos" and c.args[0] is a.args[0]


def neg(e) -> Expr:
    return mul(MINUS_ONE, _coerce(e))


def sub(a, b) -> Expr:
    return add(_coerce(a), neg(b))


def div(a, b) -> Expr:
    return mul(_coerce(a), pow_(_coerce(b), MINUS_ONE))


def simplify(e: Expr) -> Expr:
    """Canonical form; the constructors keep everything canonical already."""
    return _coerce(e)


# ---------------------------------------------------------------------------
# structural queries


_free_cache: dict = {}


def free_symbols(e: Expr) -> frozenset:
    got = _free_cache.get(e)
    if got is not None:
        return got
    if e.kind == SYM:
        out = frozenset((e.data,))
    elif e.kind == CONST:
        out = frozenset()
    else:
        out = frozenset().union(*(free_symbols(a) for a in e.args))
    _free_cache[e] = out
    return out


def contains_symbol(e: Expr, name: str) -> bool:
    return name in free_symbols(e)


# ---------------------------------------------------------------------------
# differentiation


_diff_cache: dict = {}


def differentiate(e: Expr, v: str) -> Expr:
    """Partial derivative with all symbols other than v held constant."""
    if v not in free_symbols(e):
        return ZERO
    key = (e, v)
    got = _diff_cache.get(key)
    if got is not None:
        return got
    k = e.kind
    if k == SYM:
        out = ONE  # e.data == v by the free-symbol check
    elif k == ADD:
        out = add_list([differentiate(a, v) for a in e.args])
    elif k == MUL:
        terms = []
        args = e.args
        for i, a in enumerate(args):
            da = differentiate(a, v)
            if da is ZERO:
                continue
            terms.append(mul_list([da] + [b for j, b in enumerate(args) if j != i]))
        out = add_list(terms)
    elif k == POW:
        b, p = e.args
        db = differentiate(b, v)
        dp = differentiate(p, v)
        if dp is ZERO:
            out = mul(p, pow_(b, sub(p, ONE)), db)
        else:
            # general rule: d(b**p) = b**p * (dp*ln b + p*db/b)
            out = mul(e, add(mul(dp, func("ln", b)), mul(p, db, pow_(b, MINUS_ONE))))
    else:  # FUNC
        a = e.args[0]
        da = differentiate(a, v)
        name = e.data
        if name == "exp":
            out = mul(e, da)
        elif name == "ln":
            out = mul(da, pow_(a, MINUS_ONE))
        elif name == "sin":
            out = mul(func("cos", a), da)
        elif name == "cos":
            out = mul(MINUS_ONE, func("sin", a), da)
        elif name == "abs":
            out = mul(func("sign", a), da)
        elif name == "sign":
            out = ZERO  # away from the zero locus of a
        elif name == "arctan":
            out = mul(da, pow_(add(ONE, pow_(a, const(2))), MINUS_ONE))
        elif name == "arctanh":
            out = mul(da, pow_(sub(ONE, pow_(a, const(2))), MINUS_ONE))
        else:  # pragma: no cover
            raise ExprError(f"no derivative rule for {name}")
    _diff_cache[key] = out
    return out


# ---------------------------------------------------------------------------
# substitution


def substitute(e: Expr, bindings: dict) -> Expr:
    """Simultaneous substitution of symbols, then canonical simplification."""
    binds = {}
    for k, v in bindings.items():
        name = k.data if isinstance(k, Expr) else k
        binds[name] = _coerce(v)
    if not binds:
        return e

    cache: dict = {}

    def walk(n: Expr) -> Expr:
        if n.kind == CONST:
            return n
        if n.kind == SYM:
            return binds.get(n.data, n)
        if not (free_symbols(n) & binds.keys()):
            return n
        got = cache.get(n)
        if got is not None:
            return got
        if n.kind == ADD:
            out = add_list([walk(a) for a in n.args])
        elif n.kind == MUL:
            out = mul_list([walk(a) for a in n.args])
        elif n.kind == POW:
            out = pow_(walk(n.args[0]), walk(n.args[1]))
        else:
            out = func(n.data, walk(n.args[0]))
        cache[n] = out
        return out

    return walk(e)


def assume_positive(e: Expr, names) -> Expr:
    """Rewrite abs(s) -> s and sign(s) -> 1 for symbols assumed positive.

    Applies to any abs/sign node whose argument has all free symbols in
    ``names`` and is a symbol or a power of one (the cases sign charts are
    used for in practice).
    """
    names = set(names)

    def positive(a: Expr) -> bool:
        if a.kind == SYM:
            return a.data in names
        if a.kind == POW:
            return positive(a.args[0])
        return False

    cache: dict = {}

    def walk(n: Expr) -> Expr:
        if n.kind in (CONST, SYM):
            return n
        got = cache.get(n)
        if got is not None:
            return got
        if n.kind == FUNC and n.data in ("abs", "sign") and positive(n.args[0]):
            out = walk(n.args[0]) if n.data == "abs" else ONE
        elif n.kind == ADD:
            out = add_list([walk(a) for a in n.args])
        elif n.kind == MUL:
            out = mul_list([walk(a) for a in n.args])
        elif n.kind == POW:
            out = pow_(walk(n.args[0]), walk(n.args[1]))
        else:
            out = func(n.data, walk(n.args[0]))
        cache[n] = out
        return out

    return walk(e)


# ---------------------------------------------------------------------------
# rendering


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def render(e: Expr) -> str:
    """Parseable text form; parse(render(e)) gives e back."""
    return _render(e, 0)


# precedence levels: 0 sum, 1 product, 2 unary minus handled at sum level,
# 3 power operands
def _render(e: Expr, prec: int) -> str:
    k = e.kind
    if k == CONST:
        q = e.data
        s = _frac_str(q)
        if (q < 0 and prec > 0) or (q.denominator != 1 and prec >= 1):
            return f"({s})"
        return s
    if k == SYM:
        return e.data
    if k == FUNC:
        return f"{e.data}({_render(e.args[0], 0)})"
    if k == POW:
        b, p = e.args
        return f"{_render(b, 3)}^{_render(p, 3)}"
    if k == MUL:
        args = e.args
        neg_one = args[0] is MINUS_ONE
        if neg_one and len(args) >= 2:
            body = "*".join(_render(a, 1) for a in args[1:])
            s = f"-{body}"
            return f"({s})" if prec >= 1 else s
        s = "*".join(_render(a, 1) for a in args)
        return f"({s})" if prec > 1 else s
    # ADD
    parts = []
    for i, t in enumerate(e.args):
        c, term = as_coeff_term(t)
        if i > 0 and c < 0:
            inner = mul(const(-c), term) if term is not None else const(-c)
            parts.append(" - " + _render(inner, 1))
        else:
            parts.append((" + " if i > 0 else "") + _render(t, 1))
    s = "".join(parts)
    return f"({s})" if prec > 0 else s
