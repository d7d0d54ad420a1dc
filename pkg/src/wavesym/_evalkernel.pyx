# cython: language_level=3
"""Cython exact evaluation kernel; semantics mirror _evalkernel_py.

Stack cells are Python objects (arbitrary-precision integers); the win
over the pure-Python twin comes from the typed dispatch loop.
"""

from math import gcd

from wavesym._evalkernel_py import (
    KernelInexact,
    KernelSingular,
    _pow_frac,
    OP_CONST, OP_VAR, OP_ADD, OP_MUL, OP_POWI, OP_POWF, OP_CALL, OP_POW_DYN,
    FN_ABS, FN_SIGN,
)

KERNEL_NAME = "cython"


def run_exact(list code, list consts_n, list consts_d, list vals_n, list vals_d):
    """Evaluate a compiled program over exact rationals; returns (num, den)."""
    cdef list sn = []
    cdef list sd = []
    cdef Py_ssize_t n_instr = len(code) // 2
    cdef Py_ssize_t ip, j
    cdef long op, cnt
    for ip in range(n_instr):
        op = code[2 * ip]
        if op == 0:  # OP_CONST
            j = code[2 * ip + 1]
            sn.append(consts_n[j])
            sd.append(consts_d[j])
        elif op == 1:  # OP_VAR
            j = code[2 * ip + 1]
            sn.append(vals_n[j])
            sd.append(vals_d[j])
        elif op == 2:  # OP_ADD
            cnt = code[2 * ip + 1]
            an = sn[-cnt]
            ad = sd[-cnt]
            for j in range(cnt - 1):
                bn = sn[-cnt + 1 + j]
                bd = sd[-cnt + 1 + j]
                # accumulate over the lcm so shared denominators stay small
                g = gcd(ad, bd)
                bdg = bd // g
                an = an * bdg + bn * (ad // g)
                ad = ad * bdg
            del sn[-cnt:], sd[-cnt:]
            g = gcd(an, ad)
            if g > 1:
                an //= g
                ad //= g
            sn.append(an)
            sd.append(ad)
        elif op == 3:  # OP_MUL
            cnt = code[2 * ip + 1]
            an = sn[-cnt]
            ad = sd[-cnt]
            for j in range(cnt - 1):
                bn = sn[-cnt + 1 + j]
                bd = sd[-cnt + 1 + j]
                g = gcd(an, bd) if bd != 1 else 1
                g2 = gcd(bn, ad) if ad != 1 else 1
                an = (an // g) * (bn // g2)
                ad = (ad // g2) * (bd // g)
            del sn[-cnt:], sd[-cnt:]
            g = gcd(an, ad)
            if g > 1:
                an //= g
                ad //= g
            sn.append(an)
            sd.append(ad)
        elif op == 4:  # OP_POWI
            k = code[2 * ip + 1]
            n = sn[-1]
            d = sd[-1]
            if k < 0:
                if n == 0:
                    raise KernelSingular(ip)
                if n < 0:
                    n, d = -d, -n
                else:
                    n, d = d, n
                k = -k
            sn[-1] = n**k
            sd[-1] = d**k
        elif op == 5:  # OP_POWF
            j = code[2 * ip + 1]
            n, d = _pow_frac(sn[-1], sd[-1], consts_n[j], consts_d[j], ip)
            sn[-1] = n
            sd[-1] = d
        elif op == 6:  # OP_CALL
            cnt = code[2 * ip + 1]
            if cnt == 4:  # FN_ABS
                n = sn[-1]
                sn[-1] = -n if n < 0 else n
            elif cnt == 5:  # FN_SIGN
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
