"""Exact random-point sampling for families of expressions.

Exponential atoms are replaced by monomials in fresh positive coordinates
over a basis of their argument lattice; sin/cos atoms by exact rational
points on the unit circle combined through de Moivre's formula.  The
replacement respects every algebraic relation the atoms actually satisfy,
so evaluating the rewritten expressions at random rational draws is exact
arithmetic, sound for zero functions.  Expressions with ln/arctan/arctanh
atoms or irrational constants fall back to high-precision floats.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .evaluate import (
    InexactResult,
    SingularEvaluation,
    compile_program,
    eval_float,
    run_exact,
)
from .expr import (
    ADD,
    CONST,
    FUNC,
    MUL,
    POW,
    SYM,
    Expr,
    ExprError,
    add_list,
    as_coeff_term,
    const,
    free_symbols,
    func,
    mul,
    mul_list,
    pow_,
    sym,
)

__all__ = ["ExactSampler", "Chart"]


class Chart:
    """Sign assumptions for symbols ({'u': '+'}) plus optional sampling
    boxes ({'t': (lo, hi)}) for branch-sensitive identities."""

    def __init__(self, signs=None, box=None):
        if isinstance(signs, Chart):
            box = box if box is not None else signs.box
            signs = signs.signs
        self.signs = dict(signs or {})
        self.box = {k: (Fraction(a), Fraction(b)) for k, (a, b) in (box or {}).items()}

    def sign_of(self, name):
        return self.signs.get(name)

    def box_of(self, name):
        return self.box.get(name)

    def __repr__(self):
        if self.box:
            return f"Chart({self.signs}, box={self.box})"
        return f"Chart({self.signs})"


def _term_vector(e: Expr):
    out = {}
    terms = e.args if e.kind == ADD else (e,)
    for t in terms:
        c, mono = as_coeff_term(t)
        out[mono] = c
    return out


def _lattice_basis(args):
    """Represent each arg over a Q-basis with integer coordinates."""
    basis = []
    pivots = []
    coords = []

    for a in args:
        vec = dict(_term_vector(a))
        co = [Fraction(0)] * len(basis)
        for j, p in enumerate(pivots):
            c = vec.get(p)
            if c:
                co[j] = c
                for m, bc in basis[j].items():
                    nv = vec.get(m, Fraction(0)) - c * bc
                    if nv:
                        vec[m] = nv
                    else:
                        vec.pop(m, None)
        if vec:
            p = next(iter(vec))
            scale = vec[p]
            basis.append({m: c / scale for m, c in vec.items()})
            pivots.append(p)
            co = co + [scale]
        coords.append(co)

    n = len(basis)
    coords = [co + [Fraction(0)] * (n - len(co)) for co in coords]
    scales = []
    for j in range(n):
        lcm = 1
        for co in coords:
            d = co[j].denominator
            lcm = lcm * d // gcd(lcm, d)
        scales.append(lcm)
    int_coords = [[int(co[j] * scales[j]) for j in range(n)] for co in coords]
    return n, int_coords


class ExactSampler:
    """Shared sampling plan for a family of expressions on one chart."""

    def __init__(self, exprs, chart: Chart | None = None):
        self.exprs = list(exprs)
        self.chart = chart or Chart()
        names = set()
        for e in self.exprs:
            names |= free_symbols(e)
        self.symbols = sorted(names)
        self.float_only = False
        self.exp_args: list = []
        self.trig_args: list = []
        self.pow_denoms: dict = {}
        seen = set()
        for e in self.exprs:
            self._scan(e, seen)

        # expressions repeat heavily in solver matrices; evaluate each once
        self._unique: list = []
        uniq_index: dict = {}
        self._index: list = []
        for e in self.exprs:
            i = uniq_index.get(e)
            if i is None:
                i = len(self._unique)
                uniq_index[e] = i
                self._unique.append(e)
            self._index.append(i)

        self.extra_syms: list = []
        self.programs = None
        if not self.float_only:
            submap = self._lattice_submap()
            cache: dict = {}
            rewritten = [self._rewrite(e, submap, cache) for e in self._unique]
            order = tuple(self.symbols) + tuple(self.extra_syms)
            try:
                progs = [compile_program(e, order) for e in rewritten]
                if all(p.exact_ok for p in progs):
                    self.programs = progs
                    self.var_order = order
                else:
                    self.float_only = True
            except ExprError:
                self.float_only = True

    def _scan(self, n: Expr, seen):
        if n in seen or n.kind in (CONST, SYM):
            return
        seen.add(n)
        if n.kind == FUNC:
            if n.data == "exp":
                if n.args[0] not in self.exp_args:
                    self.exp_args.append(n.args[0])
            elif n.data in ("sin", "cos"):
                if n.args[0] not in self.trig_args:
                    self.trig_args.append(n.args[0])
            elif n.data in ("ln", "arctan", "arctanh"):
                self.float_only = True
            self._scan(n.args[0], seen)
            return
        if n.kind == POW:
            b, p = n.args
            if p.kind == CONST and p.data.denominator > 1:
                if b.kind == SYM:
                    d = self.pow_denoms.get(b.data, 1)
                    q = p.data.denominator
                    self.pow_denoms[b.data] = d * q // gcd(d, q)
                else:
                    self.float_only = True
            elif p.kind != CONST and b.kind != SYM:
                self.float_only = True
            self._scan(b, seen)
            self._scan(p, seen)
            return
        for a in n.args:
            self._scan(a, seen)

    def _lattice_submap(self):
        submap = {}
        if self.exp_args:
            n, coords = _lattice_basis(self.exp_args)
            esyms = [sym(f"_E{j}") for j in range(n)]
            self.extra_syms.extend(s.data for s in esyms)
            for a, co in zip(self.exp_args, coords):
                factors = [pow_(esyms[j], const(co[j])) for j in range(n) if co[j]]
                submap[("exp", a)] = mul_list(factors) if factors else const(1)
        if self.trig_args:
            n, coords = _lattice_basis(self.trig_args)
            csyms = [sym(f"_C{j}") for j in range(n)]
            ssyms = [sym(f"_S{j}") for j in range(n)]
            for j in range(n):
                self.extra_syms.append(csyms[j].data)
                self.extra_syms.append(ssyms[j].data)
            for a, co in zip(self.trig_args, coords):
                re, im = const(1), const(0)
                for j, m in enumerate(co):
                    if not m:
                        continue
                    cj, sj = csyms[j], (ssyms[j] if m > 0 else mul(const(-1), ssyms[j]))
                    for _ in range(abs(m)):
                        re, im = (
                            add_list([mul(re, cj), mul(const(-1), im, sj)]),
                            add_list([mul(re, sj), mul(im, cj)]),
                        )
                submap[("cos", a)] = re
                submap[("sin", a)] = im
        return submap

    def _rewrite(self, n: Expr, submap, cache) -> Expr:
        if n.kind in (CONST, SYM):
            return n
        got = cache.get(n)
        if got is not None:
            return got
        if n.kind == FUNC and (n.data, n.args[0]) in submap:
            out = submap[(n.data, n.args[0])]
        elif n.kind == ADD:
            out = add_list([self._rewrite(a, submap, cache) for a in n.args])
        elif n.kind == MUL:
            out = mul_list([self._rewrite(a, submap, cache) for a in n.args])
        elif n.kind == POW:
            out = pow_(
                self._rewrite(n.args[0], submap, cache),
                self._rewrite(n.args[1], submap, cache),
            )
        else:
            out = func(n.data, self._rewrite(n.args[0], submap, cache))
        cache[n] = out
        return out

    # -- drawing ------------------------------------------------------------

    def draw_symbol(self, rng: random.Random, name: str) -> Fraction:
        bounds = self.chart.box_of(name)
        if bounds is not None:
            lo, hi = bounds
            return lo + (hi - lo) * Fraction(rng.randint(1, 996), 997)
        root = self.pow_denoms.get(name)
        if root:
            v = Fraction(rng.randint(1, 31), rng.randint(1, 31)) ** root
        else:
            v = Fraction(rng.randint(1, 999), rng.randint(1, 999))
        s = self.chart.sign_of(name)
        if s == "-":
            return -v
        if s == "+":
            return v
        return v if rng.random() < 0.5 else -v

    def draw(self, rng: random.Random):
        """One sample: (symbol point, full value map incl. lattice coords)."""
        point = {name: self.draw_symbol(rng, name) for name in self.symbols}
        values = dict(point)
        for s in self.extra_syms:
            if s.startswith("_E"):
                values[s] = Fraction(rng.randint(1, 99), rng.randint(1, 99))
            elif s.startswith("_C"):
                r = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
                values[s] = (1 - r * r) / (1 + r * r)
                values["_S" + s[2:]] = 2 * r / (1 + r * r)
        return point, values

    def eval_exact(self, idx: int, values) -> Fraction:
        prog = self.programs[self._index[idx]]
        return run_exact(prog, [values[s] for s in self.var_order])

    def eval_all(self, values):
        """Evaluate every expression at one draw (each unique one once)."""
        args = [values[s] for s in self.var_order]
        uvals = [run_exact(p, args) for p in self.programs]
        return [uvals[i] for i in self._index]

    def eval_row(self, values):
        """Evaluate every expression at one draw; None on a singular draw."""
        try:
            return self.eval_all(values)
        except SingularEvaluation:
            return None

    def eval_float(self, idx: int, point):
        return eval_float(self.exprs[idx], point)
