"""Regenerates the golden tensors with an independent numpy implementation.

Run from this directory: python3 generate.py
"""
import json

import numpy as np


def mul(c, x, y):
    return np.einsum("i,j,ijk->k", x, y, c)


def quaternions():
    c = np.zeros((4, 4, 4))
    for a in range(4):
        c[0, a, a] = 1
        c[a, 0, a] = 1
    for a in range(1, 4):
        c[a, a, 0] = -1
    # i j = k, j k = i, k i = j and their opposites.
    for a, b, k in [(1, 2, 3), (2, 3, 1), (3, 1, 2)]:
        c[a, b, k] = 1
        c[b, a, k] = -1
    return c


def mutation(c, lam):
    return lam * c + (1 - lam) * c.transpose(1, 0, 2)


def doubling(B, gamma, alpha, beta, delta, theta):
    n = B.shape[0]
    conj = -np.eye(n)
    conj[0, 0] = 1
    N = 2 * n
    c = np.zeros((N, N, N))
    m = lambda x, y: mul(B, x, y)
    com = lambda x, y: m(x, y) - m(y, x)
    for p in range(N):
        for q in range(N):
            u, v = np.eye(N)[p], np.eye(N)[q]
            x, y, x2, y2 = u[:n], u[n:], v[:n], v[n:]
            first = alpha * m(x, x2) + (1 - alpha) * m(x2, x) + beta / 2 * (com(x, y2) + com(y, x2)) + gamma * m(conj @ y2, y)
            second = m(y, conj @ x2) + m(y2, x) + delta / 2 * com(y2, y) + theta / 2 * com(x2, x)
            c[p, q] = np.concatenate([first, second])
    return c


def change_basis(c, P):
    Pinv = np.linalg.inv(P)
    return np.einsum("ap,bq,abk,lk->pql", P, P, c, Pinv)


def der_dim(c):
    n = c.shape[0]
    rows = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r = np.zeros((n, n))
                r[k, :] += c[i, j, :]
                r[:, i] -= c[:, j, k]
                r[:, j] -= c[i, :, k]
                rows.append(r.ravel())
    s = np.linalg.svd(np.array(rows), compute_uv=False)
    return int(np.sum(s <= 1e-7 * s[0]))


def dump(name, c, labels, provenance):
    n = c.shape[0]
    doc = {"dim": n, "basis": labels, "provenance": provenance, "tolerance": 1e-9, "table": c.tolist()}
    with open(name, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")


H = quaternions()
O = doubling(H, -1, 1, 0, 0, 0)
octo_labels = ["1", "i", "j", "k", "f", "if", "jf", "kf"]
dump("H.json", H, ["1", "i", "j", "k"], "golden:H")
dump("O.json", O, octo_labels, "golden:O")
dump("H_mut_0.75.json", mutation(H, 0.75), ["1", "i", "j", "k"], "golden:mut(H,0.75)")
dump("E_H_-1_0.8_0_1_0.json", doubling(H, -1, 0.8, 0, 1, 0), octo_labels, "golden:gcd(H,-1,0.8,0,1,0)")
dump("E_H_-0.5_0.9_0.3_0.2_0.6.json", doubling(H, -0.5, 0.9, 0.3, 0.2, 0.6), octo_labels,
     "golden:gcd(H,-0.5,0.9,0.3,0.2,0.6)")

# Octonions in the table basis 1, u, y1, z1, y2, z2, y3, z3 with
# u = e4, y_i = e_i, z_i = -e_{i+4}.
M = np.zeros((8, 8))
M[0, 0] = 1
M[4, 1] = 1
for i in range(3):
    M[1 + i, 2 + 2 * i] = 1
    M[5 + i, 3 + 2 * i] = -1
dump("O_table_basis.json", change_basis(O, M), ["1", "u", "y1", "z1", "y2", "z2", "y3", "z3"], "golden:O relabeled")

R = np.ones((1, 1, 1))
C = doubling(R, -1, 1, 0, 0, 0)
dims = {
    "R": der_dim(R),
    "C": der_dim(C),
    "H": der_dim(H),
    "O": der_dim(O),
    "gcd(H,-1,0.8,0,1,0)": der_dim(doubling(H, -1, 0.8, 0, 1, 0)),
    "gcd(H,-1,0.8,0,0,0)": der_dim(doubling(H, -1, 0.8, 0, 0, 0)),
    "mut(O,0.8)": der_dim(mutation(O, 0.8)),
}
with open("der_dims.json", "w") as f:
    json.dump(dims, f, indent=1)
    f.write("\n")
