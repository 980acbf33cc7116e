# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled PBW rewriting kernel (same interface as ``_pykernel``)."""


cdef class PBWKernel:
    cdef public int dim
    cdef public dict lower
    cdef dict _gen_memo
    cdef dict _mul_memo
    cdef public tuple unit

    def __init__(self, int dim, lower):
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

    cpdef tuple times_gen(self, tuple m, int j):
        cdef tuple key = (m, j)
        cdef object hit = self._gen_memo.get(key)
        if hit is not None:
            return <tuple>hit
        cdef int t = -1
        cdef int i
        for i in range(self.dim - 1, -1, -1):
            if m[i]:
                t = i
                break
        cdef list lst = list(m)
        cdef tuple res
        if t <= j:
            lst[j] += 1
            res = ((tuple(lst), 1),)
            self._gen_memo[key] = res
            return res
        lst[t] -= 1
        cdef tuple mp = tuple(lst)
        cdef dict acc = {}
        cdef object n, c, n2, c2, k, s
        for n, c in self.times_gen(mp, j):
            for n2, c2 in self.times_gen(n, t):
                acc[n2] = acc.get(n2, 0) + c * c2
        for k, s in self.lower.get((t, j), ()):
            for n, c in self.times_gen(mp, k):
                acc[n] = acc.get(n, 0) + s * c
        res = tuple([(n, c) for n, c in acc.items() if c])
        self._gen_memo[key] = res
        return res

    cpdef tuple mul_mono(self, tuple a, tuple b):
        cdef tuple key = (a, b)
        cdef object hit = self._mul_memo.get(key)
        if hit is not None:
            return <tuple>hit
        cdef int d = self.dim
        cdef int s = -1
        cdef int top = -1
        cdef int i
        cdef tuple res
        for i in range(d):
            if b[i]:
                s = i
                break
        if s < 0:
            res = ((a, 1),)
            self._mul_memo[key] = res
            return res
        for i in range(d - 1, -1, -1):
            if a[i]:
                top = i
                break
        if top <= s:
            res = ((tuple([a[i] + b[i] for i in range(d)]), 1),)
            self._mul_memo[key] = res
            return res
        cdef list lst = list(b)
        lst[s] -= 1
        cdef tuple rest = tuple(lst)
        cdef dict acc = {}
        cdef object n, c, n2, c2
        for n, c in self.times_gen(a, s):
            for n2, c2 in self.mul_mono(n, rest):
                acc[n2] = acc.get(n2, 0) + c * c2
        res = tuple([(n, c) for n, c in acc.items() if c])
        self._mul_memo[key] = res
        return res

    def graded_mul(self, list A, list B, int order, int rank):
        cdef list out = [dict() for _ in range(order + 1)]
        cdef int p, q
        cdef dict Ap, Bq, tgt, layer
        cdef tuple ka, kb, r1, r2, k
        cdef object ca, cb, cab, m, c, m1, c1, m2, c2
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
                            for m, c in self.mul_mono(ka[0], kb[0]):
                                k = (m,)
                                tgt[k] = tgt.get(k, 0) + cab * c
                        elif rank == 2:
                            r1 = self.mul_mono(ka[0], kb[0])
                            r2 = self.mul_mono(ka[1], kb[1])
                            for m1, c1 in r1:
                                c1 = cab * c1
                                for m2, c2 in r2:
                                    k = (m1, m2)
                                    tgt[k] = tgt.get(k, 0) + c1 * c2
                        else:
                            _accumulate(tgt, [self.mul_mono(ka[i], kb[i]) for i in range(rank)], cab)
        return [{k: v for k, v in layer.items() if v} for layer in out]


cdef _accumulate(dict tgt, list legs, object coeff):
    cdef list partial = [((), coeff)]
    cdef tuple leg
    for leg in legs:
        partial = [(key + (m,), c * cm) for key, c in partial for m, cm in leg]
    for key, c in partial:
        tgt[key] = tgt.get(key, 0) + c
