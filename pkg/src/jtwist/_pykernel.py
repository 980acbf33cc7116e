"""Pure-Python PBW rewriting kernel.

Monomials are exponent tuples ``(n_1, ..., n_d)`` standing for the ordered
product ``e_1**n_1 ... e_d**n_d``.  Graded elements are lists of ``K + 1``
dicts, layer ``k`` holding the coefficient of ``xi**k``; dict keys are tuples
of monomials (one per tensor leg).  The compiled kernel in ``_ckernel`` has
the same interface.
"""
from __future__ import annotations


class PBWKernel:
    """Normal-ordering engine for one Lie algebra.

    ``lower`` maps pairs ``(i, j)`` with ``i > j`` to tuples ``((k, c), ...)``
    giving ``[e_i, e_j] = sum c e_k``.  Products of monomials are memoized.
    """

    def __init__(self, dim, lower):
        self.dim = dim
        self.lower = dict(lower)
        self._gen_memo = {}
        self._mul_memo = {}
        self.unit = (0,) * dim

    def cache_size(self):
        return len(self._gen_memo) + len(self._mul_memo)

    def clear(self):
        self._gen_memo.clear()
        self._mul_memo.clear()

    # -- monomial level ---------------------------------------------------
    def times_gen(self, m, j):
        """``m * e_j`` in normal form, as a tuple of ``(monomial, coeff)``."""
        key = (m, j)
        hit = self._gen_memo.get(key)
        if hit is not None:
            return hit
        t = -1
        for i in range(self.dim - 1, -1, -1):
            if m[i]:
                t = i
                break
        if t <= j:
            lst = list(m)
            lst[j] += 1
            res = ((tuple(lst), 1),)
            self._gen_memo[key] = res
            return res
        # m = m' e_t with t > j:  m' e_t e_j = (m' e_j) e_t + m' [e_t, e_j]
        lst = list(m)
        lst[t] -= 1
        mp = tuple(lst)
        acc = {}
        for n, c in self.times_gen(mp, j):
            for n2, c2 in self.times_gen(n, t):
                acc[n2] = acc.get(n2, 0) + c * c2
        for k, s in self.lower.get((t, j), ()):
            for n, c in self.times_gen(mp, k):
                acc[n] = acc.get(n, 0) + s * c
        res = tuple((n, c) for n, c in acc.items() if c)
        self._gen_memo[key] = res
        return res

    def mul_mono(self, a, b):
        """``a * b`` in normal form, as a tuple of ``(monomial, coeff)``."""
        key = (a, b)
        hit = self._mul_memo.get(key)
        if hit is not None:
            return hit
        d = self.dim
        s = -1
        for i in range(d):
            if b[i]:
                s = i
                break
        if s < 0:
            res = ((a, 1),)
            self._mul_memo[key] = res
            return res
        top = -1
        for i in range(d - 1, -1, -1):
            if a[i]:
                top = i
                break
        if top <= s:
            res = ((tuple(x + y for x, y in zip(a, b)), 1),)
            self._mul_memo[key] = res
            return res
        lst = list(b)
        lst[s] -= 1
        rest = tuple(lst)
        acc = {}
        for n, c in self.times_gen(a, s):
            for n2, c2 in self.mul_mono(n, rest):
                acc[n2] = acc.get(n2, 0) + c * c2
        res = tuple((n, c) for n, c in acc.items() if c)
        self._mul_memo[key] = res
        return res

    # -- graded tensors -----------------------------------------------------
    def graded_mul(self, A, B, order, rank):
        """Product of graded rank-``rank`` tensors truncated at ``order``."""
        out = [dict() for _ in range(order + 1)]
        mul = self.mul_mono
        for p in range(order + 1):
            Ap = A[p]
            if not Ap:
                continue
            for q in range(order + 1 - p):
                Bq = B[q]
                if not Bq:
                    continue
                tgt = out[p + q]
                for ka, ca in Ap.items():
                    for kb, cb in Bq.items():
                        cab = ca * cb
                        if rank == 1:
                            for m, c in mul(ka[0], kb[0]):
                                k = (m,)
                                tgt[k] = tgt.get(k, 0) + cab * c
                        elif rank == 2:
                            r2 = mul(ka[1], kb[1])
                            for m1, c1 in mul(ka[0], kb[0]):
                                c1 = cab * c1
                                for m2, c2 in r2:
                                    k = (m1, m2)
                                    tgt[k] = tgt.get(k, 0) + c1 * c2
                        else:
                            legs = [mul(x, y) for x, y in zip(ka, kb)]
                            _accumulate(tgt, legs, cab)
        return [{k: v for k, v in layer.items() if v} for layer in out]


def _accumulate(tgt, legs, coeff):
    """Add ``coeff * (leg_0 (x) leg_1 (x) ...)`` into ``tgt``."""
    partial = [((), coeff)]
    for leg in legs:
        partial = [(key + (m,), c * cm) for key, c in partial for m, cm in leg]
    for key, c in partial:
        tgt[key] = tgt.get(key, 0) + c
