"""Regenerates the JSON fixtures and the Pick golden file.

Independent of the Rust code: quaternions are plain 4-vectors, Toeplitz
norms come from numpy's SVD of the complex embedding, and Pick entries are
summed directly from sum_k z_i^k (1 - f_i conj f_j) conj(z_j)^k.
"""

import json
from pathlib import Path

import numpy as np

HERE = Path(__file__).parent


def qmul(a, b):
    w1, x1, y1, z1 = a
    w2, x2, y2, z2 = b
    return np.array([
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    ])


def qconj(a):
    return np.array([a[0], -a[1], -a[2], -a[3]])


def left_eval(coeffs, z):
    acc = np.zeros(4)
    power = np.array([1.0, 0, 0, 0])
    for c in coeffs:
        acc = acc + qmul(power, c)
        power = qmul(power, z)
    return acc


def toeplitz_norm(coeffs, n):
    # embedding [[A1, A2], [-conj A2, conj A1]] of the lower-triangular Toeplitz matrix
    a1 = np.zeros((n, n), complex)
    a2 = np.zeros((n, n), complex)
    for i in range(n):
        for j in range(i + 1):
            if i - j < len(coeffs):
                c = coeffs[i - j]
                a1[i, j] = c[0] + 1j * c[1]
                a2[i, j] = c[2] + 1j * c[3]
    emb = np.block([[a1, a2], [-a2.conj(), a1.conj()]])
    return np.linalg.svd(emb, compute_uv=False)[0]


def pick_entry(zi, zj, fi, fj):
    c = np.array([1.0, 0, 0, 0]) - qmul(fi, qconj(fj))
    total = np.zeros(4)
    left = np.array([1.0, 0, 0, 0])
    right = np.array([1.0, 0, 0, 0])
    rho = np.linalg.norm(zi) * np.linalg.norm(zj)
    k = 0
    while True:
        term = qmul(qmul(left, c), right)
        total = total + term
        k += 1
        if rho ** k * np.linalg.norm(c) / (1 - rho) < 1e-18:
            return total
        left = qmul(left, zi)
        right = qmul(right, qconj(zj))


def dump(name, obj):
    (HERE / name).write_text(json.dumps(obj, indent=2) + "\n")


def series(coeffs):
    return {"coefficients": [list(map(float, c)) for c in coeffs]}


def main():
    rng = np.random.default_rng(20240917)
    raw = rng.normal(size=(9, 4))
    schur = raw / toeplitz_norm(raw, 64)
    inner = 0.9 * schur

    dump("series_identity.json", series([[0, 0, 0, 0], [1, 0, 0, 0]]))
    dump("series_const_1_1.json", series([[1.1, 0, 0, 0]]))
    dump("schur_deg8.json", series(schur))
    dump("decompose_3_4k.json", series([[3, 0, 0, 4]]))
    dump("decompose_boundary.json", series([[0.6, 0, 0.8, 0]]))
    dump("hindmarsh_schur.json", {"series": series(inner)})
    dump("hindmarsh_offset.json", {
        "series": series(inner),
        "corruption": {"offslice_offset": [0.2, 0, 0, 0]},
    })
    dump("hindmarsh_const2.json", {"series": series([[2, 0, 0, 0]])})
    dump("pick_one_point.json", {"points": [[0.5, 0, 0, 0]], "values": [[0, 0, 0, 0]], "side": "standard"})
    dump("pick_one_point_dual.json", {"points": [[0.5, 0, 0, 0]], "values": [[0, 0, 0, 0]], "side": "dual"})

    points = [np.array([0.3, 0.4, 0, 0]), np.array([-0.5, 0.1, 0, 0]), np.array([0.1, -0.7, 0, 0])]
    values = [left_eval(inner, z) for z in points]
    dump("pick_slice3.json", {
        "points": [list(map(float, p)) for p in points],
        "values": [list(map(float, v)) for v in values],
        "side": "standard",
    })
    matrix = [pick_entry(zi, zj, fi, fj) for zi, fi in zip(points, values) for zj, fj in zip(points, values)]
    dump("pick_slice3.golden.json", {"rows": 3, "cols": 3, "entries": [list(map(float, q)) for q in matrix]})


if __name__ == "__main__":
    main()
