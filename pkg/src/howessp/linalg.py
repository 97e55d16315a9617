"""Dense linear algebra over a FieldCtx on lists of codes."""

from __future__ import annotations

from .field_tower import FieldCtx

__all__ = ["rref", "rank", "null_space", "inverse", "in_span", "mat_vec"]


def rref(ctx: FieldCtx, rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    mul, sub, inv = ctx.mul, ctx.sub, ctx.inv
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        s = inv(M[r][c])
        M[r] = [mul(s, v) for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [sub(a, mul(f, b)) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(ctx: FieldCtx, rows: list[list[int]]) -> int:
    return len(rref(ctx, rows)[1])


def null_space(ctx: FieldCtx, rows: list[list[int]]) -> list[list[int]]:
    """Basis of {x : rows . x = 0}, one vector per free column in increasing order."""
    ncols = len(rows[0])
    R, pivots = rref(ctx, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = ctx.neg(R[i][f])
        basis.append(v)
    return basis


def inverse(ctx: FieldCtx, M: list[list[int]]) -> list[list[int]]:
    n = len(M)
    aug = [list(M[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    R, pivots = rref(ctx, aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def in_span(ctx: FieldCtx, vectors: list[list[int]], v: list[int]) -> bool:
    return rank(ctx, vectors + [v]) == rank(ctx, vectors)


def mat_vec(ctx: FieldCtx, M: list[list[int]], v: list[int]) -> list[int]:
    add, mul = ctx.add, ctx.mul
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = add(acc, mul(a, b))
        out.append(acc)
    return out
