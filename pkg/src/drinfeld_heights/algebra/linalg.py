"""Incremental Gaussian elimination over F_q, for Krylov-type dependencies."""

from __future__ import annotations


class IncrementalEliminator:
    """Feed vectors v_0, v_1, ... one at a time; ``add`` returns the first
    relation c_0 v_0 + ... + c_k v_k = 0 with c_k = 1 once v_k lies in the
    span of the earlier vectors, and None before that.

    Vectors are sequences of element codes and may have different lengths
    (missing entries are zero).
    """

    def __init__(self, field):
        self.field = field
        self.rows = []  # (pivot, vector dict, combination dict)
        self.count = 0

    def _axpy(self, target, scale, source):
        # target -= scale * source, on sparse dicts
        f = self.field
        for k, c in source.items():
            new = f.sub(target.get(k, 0), f.mul(scale, c))
            if new:
                target[k] = new
            else:
                target.pop(k, None)

    def add(self, vector):
        f = self.field
        vec = {k: c for k, c in enumerate(vector) if c}
        comb = {self.count: 1}
        self.count += 1
        for pivot, row, rcomb in self.rows:
            c = vec.get(pivot, 0)
            if c:
                self._axpy(vec, c, row)
                self._axpy(comb, c, rcomb)
        if not vec:
            k = self.count - 1
            return [comb.get(i, 0) for i in range(k + 1)]
        pivot = min(vec)
        inv = f.inv(vec[pivot])
        vec = {k: f.mul(inv, c) for k, c in vec.items()}
        comb = {k: f.mul(inv, c) for k, c in comb.items()}
        # keep rows fully reduced against the new pivot so later passes stay single-sweep
        for idx, (p, row, rcomb) in enumerate(self.rows):
            c = row.get(pivot, 0)
            if c:
                row, rcomb = dict(row), dict(rcomb)
                self._axpy(row, c, vec)
                self._axpy(rcomb, c, comb)
                self.rows[idx] = (p, row, rcomb)
        self.rows.append((pivot, vec, comb))
        return None


def first_dependency(field, vectors):
    """Coefficients of the first linear relation among ``vectors`` (last one 1), or None."""
    elim = IncrementalEliminator(field)
    for v in vectors:
        rel = elim.add(v)
        if rel is not None:
            return rel
    return None
