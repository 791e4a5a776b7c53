"""Independent reference computations used only by the tests.

Nothing here calls into the Hochster or DGA code paths: complexes are
read as plain facet lists, faces are enumerated by brute force and ranks
come from sympy.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import sympy


def faces_of(facets: list[tuple[int, ...]]) -> set[frozenset[int]]:
    out = {frozenset()}
    for f in facets:
        for k in range(len(f) + 1):
            out.update(frozenset(c) for c in itertools.combinations(f, k))
    return out


def kernel_vectors(L_rows: list[list[int]], m: int) -> list[tuple[int, ...]]:
    """Every g ∈ {0,1}^m with Λg = 0, by enumeration."""
    out = []
    for g in itertools.product((0, 1), repeat=m):
        if all(sum(r[i] * g[i] for i in range(m)) % 2 == 0 for r in L_rows):
            out.append(g)
    return out


def row_space_vectors(L_rows: list[list[int]], m: int) -> set[tuple[int, ...]]:
    out = set()
    for coeffs in itertools.product((0, 1), repeat=len(L_rows)):
        v = [0] * m
        for c, r in zip(coeffs, L_rows):
            if c:
                v = [(a + b) % 2 for a, b in zip(v, r)]
        out.add(tuple(v))
    return out


def _rank(rows: list[list[int]], ncols: int) -> int:
    if not rows or not ncols:
        return 0
    return sympy.Matrix(rows).rank()


def cube_cell_betti(m: int, facets: list[tuple[int, ...]], L_rows: list[list[int]] | None = None) -> list[int]:
    """Rational Betti numbers of RZ_K / ker Λ from the cubical cell structure.

    Cells of RZ_K are words e ∈ {0, 1, I}^m whose I-positions form a face.
    The boundary is ∂e = Σ_j (-1)^(j-1) (e[i_j ← 1] - e[i_j ← 0]) over the
    I-positions i_1 < i_2 < ...  An element g of ker Λ swaps 0 and 1 on its
    support and reverses every flipped interval, so it acts on a cell by a
    sign (-1)^{#I-positions in g}.  Rational homology of the quotient is the
    homology of the invariant chains, spanned by the nonzero orbit sums.
    """
    faces = faces_of(facets)
    group = kernel_vectors(L_rows, m) if L_rows is not None else [tuple([0] * m)]
    cells_by_dim: dict[int, list[tuple]] = {}
    for word in itertools.product((0, 1, 2), repeat=m):  # 2 stands for I
        support = frozenset(i + 1 for i, x in enumerate(word) if x == 2)
        if support in faces:
            cells_by_dim.setdefault(len(support), []).append(word)

    def act(g, word):
        sign = 1
        out = []
        for gi, x in zip(g, word):
            if gi and x == 2:
                sign = -sign
                out.append(2)
            elif gi:
                out.append(1 - x)
            else:
                out.append(x)
        return sign, tuple(out)

    # canonical representative and sign: s(e) = sign · s(rep)
    canon: dict[tuple, tuple[int, tuple]] = {}
    alive: set[tuple] = set()
    for cells in cells_by_dim.values():
        for word in cells:
            if word in canon:
                continue
            orbit = {}
            dead = False
            for g in group:
                sign, img = act(g, word)
                if img in orbit and orbit[img] != sign:
                    dead = True
                orbit[img] = sign
            rep = min(orbit)
            for img, sign in orbit.items():
                # s(img) = sign_img · s(word) and s(rep) = sign_rep · s(word)
                canon[img] = (sign * orbit[rep], rep)
            if not dead:
                alive.add(rep)

    def boundary(word):
        out: dict[tuple, int] = {}
        positions = [i for i, x in enumerate(word) if x == 2]
        for j, i in enumerate(positions):
            s = -1 if j % 2 else 1
            for end, coeff in ((1, s), (0, -s)):
                w = list(word)
                w[i] = end
                w = tuple(w)
                sign, rep = canon[w]
                if rep in alive:
                    out[rep] = out.get(rep, 0) + coeff * sign
        return out

    top = max(cells_by_dim)
    basis = {d: sorted(w for w in cells_by_dim[d] if w in alive) for d in cells_by_dim}
    ranks = {}
    for d in range(1, top + 1):
        cols = {w: i for i, w in enumerate(basis.get(d - 1, []))}
        rows = []
        for w in basis.get(d, []):
            row = [0] * len(cols)
            for target, c in boundary(w).items():
                row[cols[target]] += c
            rows.append(row)
        ranks[d] = _rank(rows, len(cols))
    betti = []
    for d in range(top + 1):
        n = len(basis.get(d, []))
        betti.append(n - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return betti


@lru_cache(maxsize=None)
def reduced_betti_bruteforce(facets: tuple[tuple[int, ...], ...], omega: frozenset[int]) -> tuple[int, ...]:
    """dim H̃^{k-1}(K_ω) for k = 0 .. |ω|, via sympy on the augmented chain complex."""
    faces = [f for f in faces_of(list(facets)) if f <= omega]
    by_size: dict[int, list[tuple[int, ...]]] = {}
    for f in faces:
        by_size.setdefault(len(f), []).append(tuple(sorted(f)))
    for v in by_size.values():
        v.sort()
    top = max(by_size)
    ranks = {}
    for k in range(1, top + 1):
        idx = {f: i for i, f in enumerate(by_size[k - 1])}
        rows = []
        for f in by_size[k]:
            row = [0] * len(idx)
            for j in range(len(f)):
                row[idx[f[:j] + f[j + 1:]]] = (-1) ** j
            rows.append(row)
        ranks[k] = _rank(rows, len(idx))
    return tuple(len(by_size.get(k, [])) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(top + 1))


def circuits_bruteforce(columns: list[tuple[int, ...]]) -> list[frozenset[int]]:
    """Minimal dependent column sets by checking every subset."""
    n = len(columns)

    def dependent_sum_zero(sub):
        # a set is a circuit iff it sums to zero and no proper nonempty subset does
        return all(sum(columns[i][r] for i in sub) % 2 == 0 for r in range(len(columns[0]) if columns else 0))

    zero_sum = [frozenset(s) for k in range(1, n + 1) for s in itertools.combinations(range(n), k)
                if dependent_sum_zero(s)]
    return sorted((c for c in zero_sum if not any(d < c for d in zero_sum)), key=lambda c: (len(c), sorted(c)))


# -- word rewriting in R^K --------------------------------------------------------------------

Letter = tuple[str, int]  # ("u", i) or ("t", i)


def word_of(sigma: set[int], omega: set[int]) -> list[Letter]:
    """u_σ t_{ω∖σ} written with letters sorted by index."""
    return [("u" if i in sigma else "t", i) for i in sorted(omega)]


def normal_form(word: list[Letter]) -> tuple[int, frozenset[int], frozenset[int]] | None:
    """Rewrite a word with the defining relations by adjacent moves.

    Returns (sign, σ, ω) or None for zero.  Letters with different indices
    are sorted by bubble sort (two u's anticommute, everything else
    commutes); equal indices collide as uu = 0, ut = u, tu = -u, tt = 1.
    """
    word = list(word)
    sign = 1
    changed = True
    while changed:
        changed = False
        for k in range(len(word) - 1):
            (a, i), (b, j) = word[k], word[k + 1]
            if i > j:
                word[k], word[k + 1] = word[k + 1], word[k]
                if a == b == "u":
                    sign = -sign
                changed = True
                break
            if i == j:
                pair = a + b
                if pair == "uu":
                    return None
                if pair == "tt":
                    del word[k:k + 2]
                else:
                    if pair == "tu":
                        sign = -sign
                    word[k:k + 2] = [("u", i)]
                changed = True
                break
    sigma = frozenset(i for x, i in word if x == "u")
    omega = frozenset(i for _, i in word)
    return sign, sigma, omega


def d_word(word: list[Letter]) -> list[tuple[int, list[Letter]]]:
    """Leibniz rule letter by letter: d t_i = u_i, d u_i = 0."""
    out = []
    degree = 0
    for k, (x, i) in enumerate(word):
        if x == "t":
            out.append((-1 if degree % 2 else 1, word[:k] + [("u", i)] + word[k + 1:]))
        else:
            degree += 1
    return out
