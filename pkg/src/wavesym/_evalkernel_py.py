"""Pure-Python exact evaluation kernel (fallback for the Cython build).

Programs are flat [op, operand, op, operand, ...] lists produced by
wavesym.evaluate.compile_program; values are unnormalized rational pairs.
Both kernels implement exactly the same semantics; wavesym.evaluate picks
the compiled one when it imported successfully.
"""

from math import gcd

KERNEL_NAME = "python"

OP_CONST = 0
OP_VAR = 1
OP_ADD = 2
OP_MUL = 3
OP_POWI = 4
OP_POWF = 5
OP_CALL = 6
OP_POW_DYN = 7

FN_EXP = 0
FN_LN = 1
FN_SIN = 2
FN_COS = 3
FN_ABS = 4
FN_SIGN = 5
FN_ARCTAN = 6
FN_ARCTANH = 7

EXACT_FUNCS = (FN_ABS, FN_SIGN)


class KernelInexact(Exception):
    """Raised when the exact kernel hits an irrational operation."""

    def __init__(self, ip):
        self.ip = ip
        super().__init__(f"inexact operation at instruction {ip}")


class KernelSingular(Exception):
    """Raised on division by zero or other singular evaluation."""

    def __init__(self, ip):
        self.ip = ip
        super().__init__(f"singular evaluation at instruction {ip}")


def _iroot(n, k):
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**k == n:
            return c
    return None


def _pow_frac(num, den, pn, pd, ip):
    # (num/den) ** (pn/pd) with pd > 1; exact or bust
    if num == 0:
        if pn > 0:
            return 0, 1
        raise KernelSingular(ip)
    if num < 0:
        raise KernelSingular(ip)
    if pn < 0:
        num, den, pn = den, num, -pn
        if num == 0:
            raise KernelSingular(ip)
    rn = _iroot(num, pd)
    rd = _iroot(den, pd)
    if rn is None or rd is None:
        raise KernelInexact(ip)
    return rn**pn, rd**pn


def run_exact(code, consts_n, consts_d, vals_n, vals_d):
    """Evaluate a compiled program over exact rationals.

    Returns an unreduced (num, den) pair with den > 0.
    """
    sn = []  # numerator stack
    sd = []  # denominator stack
    n_instr = len(code) // 2
    for ip in range(n_instr):
        op = code[2 * ip]
        arg = code[2 * ip + 1]
        if op == OP_CONST:
            sn.append(consts_n[arg])
            sd.append(consts_d[arg])
        elif op == OP_VAR:
            sn.append(vals_n[arg])
            sd.append(vals_d[arg])
        elif op == OP_ADD:
            an = sn[-arg]
            ad = sd[-arg]
            for j in range(arg - 1):
                bn = sn[-arg + 1 + j]
                bd = sd[-arg + 1 + j]
                # accumulate over the lcm so shared denominators stay small
                g = gcd(ad, bd)
                bdg = bd // g
                an = an * bdg + bn * (ad // g)
                ad = ad * bdg
            del sn[-arg:], sd[-arg:]
            g = gcd(an, ad)
            if g > 1:
                an //= g
                ad //= g
            sn.append(an)
            sd.append(ad)
        elif op == OP_MUL:
            an = sn[-arg]
            ad = sd[-arg]
            for j in range(arg - 1):
                bn = sn[-arg + 1 + j]
                bd = sd[-arg + 1 + j]
                g1 = gcd(an, bd) if bd != 1 else 1
                g2 = gcd(bn, ad) if ad != 1 else 1
                an = (an // g1) * (bn // g2)
                ad = (ad // g2) * (bd // g1)
            del sn[-arg:], sd[-arg:]
            g = gcd(an, ad)
            if g > 1:
                an //= g
                ad //= g
            sn.append(an)
            sd.append(ad)
        elif op == OP_POWI:
            n = sn[-1]
            d = sd[-1]
            if arg < 0:
                if n == 0:
                    raise KernelSingular(ip)
                if n < 0:
                    n, d = -d, -n
                else:
                    n, d = d, n
                arg = -arg
            sn[-1] = n**arg
            sd[-1] = d**arg
        elif op == OP_POWF:
            n, d = _pow_frac(sn[-1], sd[-1], consts_n[arg], consts_d[arg], ip)
            sn[-1] = n
            sd[-1] = d
        elif op == OP_CALL:
            if arg == FN_ABS:
                sn[-1] = abs(sn[-1])
            elif arg == FN_SIGN:
                n = sn[-1]
                sn[-1] = (n > 0) - (n < 0)
                sd[-1] = 1
            else:
                raise KernelInexact(ip)
        else:  # OP_POW_DYN
            pn = sn.pop()
            pd = sd.pop()
            g = gcd(pn, pd)
            if g > 1:
                pn //= g
                pd //= g
            if pd == 1:
                n = sn[-1]
                d = sd[-1]
                if pn < 0:
                    if n == 0:
                        raise KernelSingular(ip)
                    if n < 0:
                        n, d = -d, -n
                    else:
                        n, d = d, n
                    pn = -pn
                sn[-1] = n**pn
                sd[-1] = d**pn
            else:
                n, d = _pow_frac(sn[-1], sd[-1], pn, pd, ip)
                sn[-1] = n
                sd[-1] = d
    return sn[0], sd[0]
