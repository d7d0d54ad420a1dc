"""Exact and high-precision evaluation of expressions at points.

Exact evaluation compiles the expression once into a small stack program
and runs it on the rational kernel (the Cython build when available, the
pure-Python twin otherwise).  Anything irrational falls back to mpmath at
a working precision of at least 50 decimal digits, with a reported error
bound obtained from a second evaluation at higher precision.
"""

from __future__ import annotations

import os
from fractions import Fraction

import mpmath

from . import _evalkernel_py as _pykernel
from .expr import ADD, CONST, FUNC, MUL, POW, SYM, Expr, ExprError, free_symbols

try:  # compiled kernel is optional
    from . import _evalkernel as _ckernel
except ImportError:  # pragma: no cover - depends on the build
    _ckernel = None

_kernel = _ckernel if _ckernel is not None else _pykernel
KERNEL_NAME = _kernel.KERNEL_NAME

__all__ = [
    "evaluate",
    "EvalFloat",
    "UnboundSymbol",
    "SingularEvaluation",
    "InexactResult",
    "Program",
    "compile_program",
    "run_exact",
    "default_precision",
    "KERNEL_NAME",
]

_FN_IDS = {
    "exp": _pykernel.FN_EXP,
    "ln": _pykernel.FN_LN,
    "sin": _pykernel.FN_SIN,
    "cos": _pykernel.FN_COS,
    "abs": _pykernel.FN_ABS,
    "sign": _pykernel.FN_SIGN,
    "arctan": _pykernel.FN_ARCTAN,
    "arctanh": _pykernel.FN_ARCTANH,
}


class UnboundSymbol(ExprError):
    pass


class SingularEvaluation(ExprError):
    """Singular point; carries the offending subexpression."""

    def __init__(self, subexpr):
        self.subexpr = subexpr
        super().__init__(f"singular evaluation in {subexpr}")


class InexactResult(ExprError):
    """Exact evaluation hit an irrational operation."""

    def __init__(self, subexpr):
        self.subexpr = subexpr
        super().__init__(f"no exact value for {subexpr}")


class EvalFloat:
    """High-precision float result with a heuristic error bound."""

    __slots__ = ("value", "bound", "precision")

    def __init__(self, value, bound, precision):
        self.value = value
        self.bound = bound
        self.precision = precision

    def __repr__(self):
        return f"EvalFloat({self.value}, ±{self.bound})"


def default_precision() -> int:
    try:
        return max(50, int(os.environ.get("WAVESYM_PRECISION", "50")))
    except ValueError:
        return 50


class Program:
    """Compiled stack program for one expression and variable order."""

    __slots__ = ("code", "consts_n", "consts_d", "var_order", "nodes", "exact_ok")

    def __init__(self, code, consts_n, consts_d, var_order, nodes, exact_ok):
        self.code = code
        self.consts_n = consts_n
        self.consts_d = consts_d
        self.var_order = var_order
        self.nodes = nodes
        self.exact_ok = exact_ok


_program_cache: dict = {}


def compile_program(e: Expr, var_order: tuple) -> Program:
    key = (e, var_order)
    got = _program_cache.get(key)
    if got is not None:
        return got
    code: list = []
    consts_n: list = []
    consts_d: list = []
    const_index: dict = {}
    nodes: list = []
    var_pos = {name: i for i, name in enumerate(var_order)}
    exact_ok = True

    def cidx(q: Fraction) -> int:
        i = const_index.get(q)
        if i is None:
            i = len(consts_n)
            const_index[q] = i
            consts_n.append(q.numerator)
            consts_d.append(q.denominator)
        return i

    def emit(op, arg, node):
        code.append(op)
        code.append(arg)
        nodes.append(node)

    def walk(n: Expr):
        nonlocal exact_ok
        k = n.kind
        if k == CONST:
            emit(_pykernel.OP_CONST, cidx(n.data), n)
        elif k == SYM:
            i = var_pos.get(n.data)
            if i is None:
                raise UnboundSymbol(f"unbound symbol {n.data!r}")
            emit(_pykernel.OP_VAR, i, n)
        elif k == ADD:
            for a in n.args:
                walk(a)
            emit(_pykernel.OP_ADD, len(n.args), n)
        elif k == MUL:
            for a in n.args:
                walk(a)
            emit(_pykernel.OP_MUL, len(n.args), n)
        elif k == POW:
            b, p = n.args
            walk(b)
            if p.kind == CONST:
                if p.data.denominator == 1:
                    emit(_pykernel.OP_POWI, p.data.numerator, n)
                else:
                    # perfect-power bases may still evaluate exactly
                    emit(_pykernel.OP_POWF, cidx(p.data), n)
            else:
                walk(p)
                emit(_pykernel.OP_POW_DYN, 0, n)
        else:  # FUNC
            walk(n.args[0])
            fid = _FN_IDS[n.data]
            if fid not in _pykernel.EXACT_FUNCS:
                exact_ok = False
            emit(_pykernel.OP_CALL, fid, n)

    walk(e)
    prog = Program(code, consts_n, consts_d, var_order, nodes, exact_ok)
    _program_cache[key] = prog
    return prog


def run_exact(prog: Program, values) -> Fraction:
    """Run the kernel on rational values (ordered per prog.var_order)."""
    vn = []
    vd = []
    for v in values:
        if not isinstance(v, Fraction):
            v = Fraction(v)
        vn.append(v.numerator)
        vd.append(v.denominator)
    try:
        n, d = _kernel.run_exact(prog.code, prog.consts_n, prog.consts_d, vn, vd)
    except _pykernel.KernelSingular as exc:
        raise SingularEvaluation(prog.nodes[exc.ip]) from None
    except _pykernel.KernelInexact as exc:
        raise InexactResult(prog.nodes[exc.ip]) from None
    return Fraction(n, d)


def _mp_eval(e: Expr, point, mp) -> "mpmath.mpf":
    k = e.kind
    if k == CONST:
        return mp.mpf(e.data.numerator) / e.data.denominator
    if k == SYM:
        v = point[e.data]
        if isinstance(v, Fraction):
            return mp.mpf(v.numerator) / v.denominator
        return mp.mpf(v)
    if k == ADD:
        return mp.fsum(_mp_eval(a, point, mp) for a in e.args)
    if k == MUL:
        out = mp.mpf(1)
        for a in e.args:
            out *= _mp_eval(a, point, mp)
        return out
    if k == POW:
        b = _mp_eval(e.args[0], point, mp)
        p = e.args[1]
        pv = _mp_eval(p, point, mp)
        if b == 0 and pv <= 0:
            raise SingularEvaluation(e)
        if b < 0:
            if p.kind == CONST and p.data.denominator == 1:
                return b ** int(p.data)
            raise SingularEvaluation(e)
        return b**pv
    name = e.data
    a = _mp_eval(e.args[0], point, mp)
    if name == "exp":
        return mp.exp(a)
    if name == "ln":
        if a <= 0:
            raise SingularEvaluation(e)
        return mp.log(a)
    if name == "sin":
        return mp.sin(a)
    if name == "cos":
        return mp.cos(a)
    if name == "abs":
        return abs(a)
    if name == "sign":
        return mp.mpf((a > 0) - (a < 0))
    if name == "arctan":
        return mp.atan(a)
    if name == "arctanh":
        if abs(a) >= 1:
            raise SingularEvaluation(e)
        return mp.atanh(a)
    raise ExprError(f"cannot evaluate {name}")  # pragma: no cover


def eval_float(e: Expr, point, precision=None) -> EvalFloat:
    """mpmath evaluation at >= 50 digits with a two-precision error bound."""
    dps = precision or default_precision()
    mp = mpmath.mp.clone()
    mp.dps = dps + 10
    v1 = _mp_eval(e, point, mp)
    mp.dps = dps + 30
    v2 = _mp_eval(e, point, mp)
    bound = abs(v1 - v2) + mpmath.mpf(10) ** (-(dps + 5)) * (1 + abs(v2))
    return EvalFloat(v2, bound, dps)


def evaluate(e: Expr, point: dict, precision=None):
    """Evaluate at a point: exact Fraction when possible, else EvalFloat.

    point maps symbol names (or Symbol exprs) to rationals or floats; every
    free symbol of e must be bound.
    """
    binds = {}
    float_input = False
    for k, v in point.items():
        name = k.data if isinstance(k, Expr) else k
        if isinstance(v, (int, Fraction)):
            binds[name] = Fraction(v)
        else:
            binds[name] = v
            float_input = True
    missing = free_symbols(e) - binds.keys()
    if missing:
        raise UnboundSymbol(f"unbound symbols: {sorted(missing)}")
    if not float_input:
        order = tuple(sorted(binds))
        prog = compile_program(e, order)
        if prog.exact_ok:
            try:
                return run_exact(prog, [binds[s] for s in order])
            except InexactResult:
                pass
    return eval_float(e, binds, precision)
