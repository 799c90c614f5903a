"""Independent oracles shared by the test modules.

These deliberately avoid the library's own elimination and Smith-form code
paths so that agreement is a genuine cross-check.
"""


def quotient_dimension_oracle(M, det):
    """Dimension of K[x]^r / (column span of M) as a K-space.

    det * K[x]^r lies inside the column span (multiply by the adjugate), so
    the quotient equals (K[x]/det)^r modulo the reduced shifted columns; that
    is a finite-dimensional row-reduction with no truncation subtleties.
    """
    tower = M[0][0].tower
    r = len(M)
    D = int(det.degree)
    if D == 0:
        return 0
    vectors = []
    for j in range(r):
        col = [M[i][j] for i in range(r)]
        for k in range(D):
            vec = []
            for i in range(r):
                reduced = col[i].shift(k) % det
                vec.extend(reduced.coeff_index(d) for d in range(D))
            vectors.append(vec)
    pivots = {}
    rows = []
    for vec in vectors:
        vec = list(vec)
        for pcol, prow in pivots.items():
            c = vec[pcol]
            if c:
                vec = [
                    tower.sub_index(a, tower.mul_index(c, b))
                    for a, b in zip(vec, rows[prow])
                ]
        lead = next((i for i, c in enumerate(vec) if c), None)
        if lead is None:
            continue
        inv = tower.inv_index(vec[lead])
        vec = [tower.mul_index(c, inv) for c in vec]
        pivots[lead] = len(rows)
        rows.append(vec)
    return r * D - len(rows)
