#!/usr/bin/env python3
"""Generate the H2 / STO-3G qubit Hamiltonian fixture.

Computes the one- and two-electron integrals of H2 in the STO-3G basis from
closed-form Gaussian integrals, builds the restricted Hartree-Fock molecular
orbitals (fixed by symmetry for a homonuclear diatomic in a minimal basis),
maps the second-quantized Hamiltonian to qubits with the Jordan-Wigner
transformation (spin-orbital order: 0=sigma_g up, 1=sigma_g down,
2=sigma_u up, 3=sigma_u down; qubit k is the k-th character of each Pauli
string, i.e. the leftmost tensor factor) and writes the Pauli decomposition.

Usage: python3 scripts/generate_h2_fixture.py [bond_angstrom] > data/h2_sto3g_0.50.json
"""
import itertools
import json
import math
import sys

import numpy as np
from scipy.special import erf

ANGSTROM_TO_BOHR = 1.0 / 0.52917721092
# STO-3G hydrogen 1s (zeta = 1.24)
EXPONENTS = np.array([3.42525091, 0.62391373, 0.16885540])
CONTRACTION = np.array([0.15432897, 0.53532814, 0.44463454])


def boys0(x):
    if x < 1e-12:
        return 1.0 - x / 3.0
    return 0.5 * math.sqrt(math.pi / x) * erf(math.sqrt(x))


def prim_norm(a):
    return (2.0 * a / math.pi) ** 0.75


def contracted(center):
    return [(a, d * prim_norm(a), center) for a, d in zip(EXPONENTS, CONTRACTION)]


def overlap(p, q):
    a, ca, A = p
    b, cb, B = q
    r2 = np.sum((A - B) ** 2)
    return ca * cb * (math.pi / (a + b)) ** 1.5 * math.exp(-a * b / (a + b) * r2)


def kinetic(p, q):
    a, ca, A = p
    b, cb, B = q
    r2 = np.sum((A - B) ** 2)
    mu = a * b / (a + b)
    return ca * cb * mu * (3.0 - 2.0 * mu * r2) * (math.pi / (a + b)) ** 1.5 * math.exp(-mu * r2)


def nuclear(p, q, C, Z):
    a, ca, A = p
    b, cb, B = q
    r2 = np.sum((A - B) ** 2)
    P = (a * A + b * B) / (a + b)
    pc2 = np.sum((P - C) ** 2)
    return -Z * ca * cb * 2.0 * math.pi / (a + b) * math.exp(-a * b / (a + b) * r2) * boys0((a + b) * pc2)


def eri(p, q, r, s):
    a, ca, A = p
    b, cb, B = q
    c, cc, C = r
    d, cd, D = s
    P = (a * A + b * B) / (a + b)
    Q = (c * C + d * D) / (c + d)
    pref = 2.0 * math.pi ** 2.5 / ((a + b) * (c + d) * math.sqrt(a + b + c + d))
    e = math.exp(-a * b / (a + b) * np.sum((A - B) ** 2) - c * d / (c + d) * np.sum((C - D) ** 2))
    x = (a + b) * (c + d) / (a + b + c + d) * np.sum((P - Q) ** 2)
    return ca * cb * cc * cd * pref * e * boys0(x)


def ao_integrals(bond_bohr):
    centers = [np.zeros(3), np.array([0.0, 0.0, bond_bohr])]
    basis = [contracted(c) for c in centers]
    n = len(basis)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    G = np.zeros((n, n, n, n))
    for i, j in itertools.product(range(n), repeat=2):
        for p, q in itertools.product(basis[i], basis[j]):
            S[i, j] += overlap(p, q)
            T[i, j] += kinetic(p, q)
            V[i, j] += sum(nuclear(p, q, C, 1.0) for C in centers)
    for i, j, k, l in itertools.product(range(n), repeat=4):
        for p, q, r, s in itertools.product(basis[i], basis[j], basis[k], basis[l]):
            G[i, j, k, l] += eri(p, q, r, s)
    return S, T + V, G


def jordan_wigner_annihilators(n_modes):
    I = np.eye(2)
    Z = np.diag([1.0, -1.0])
    lower = np.array([[0.0, 1.0], [0.0, 0.0]])  # |1> -> |0>, occupied = |1>
    ops = []
    for j in range(n_modes):
        factors = [Z] * j + [lower] + [I] * (n_modes - j - 1)
        m = factors[0]
        for f in factors[1:]:
            m = np.kron(m, f)
        ops.append(m)
    return ops


def pauli_matrix(label):
    mats = {
        "I": np.eye(2, dtype=complex),
        "X": np.array([[0, 1], [1, 0]], dtype=complex),
        "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
        "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    }
    m = mats[label[0]]
    for c in label[1:]:
        m = np.kron(m, mats[c])
    return m


def term_rank(label):
    """Emission order: constant, sigma_u number terms, Z-Z terms, the
    double-excitation block, then sigma_g number terms. The Trotter error
    operator depends on this order."""
    n_z = label.count("Z")
    if label == "I" * len(label):
        group = 0
    elif "X" in label or "Y" in label:
        group = 3
    elif n_z == 1 and label.index("Z") >= 2:
        group = 1
    elif n_z == 1:
        group = 4
    else:
        group = 2
    inner = label[::-1] if group == 1 else label
    return (group, inner)


def main():
    bond = float(sys.argv[1]) if len(sys.argv) > 1 else 0.5
    R = bond * ANGSTROM_TO_BOHR
    S, h_ao, g_ao = ao_integrals(R)
    s = S[0, 1]
    C = np.array([[1.0, 1.0], [1.0, -1.0]])
    C[:, 0] /= math.sqrt(2.0 * (1.0 + s))
    C[:, 1] /= math.sqrt(2.0 * (1.0 - s))
    h_mo = C.T @ h_ao @ C
    g_mo = np.einsum("pi,qj,rk,sl,pqrs->ijkl", C, C, C, C, g_ao)  # chemist (ij|kl)
    e_nuc = 1.0 / R

    n_so = 4
    a = jordan_wigner_annihilators(n_so)
    adag = [m.T for m in a]
    dim = 2 ** n_so
    H = e_nuc * np.eye(dim)
    spatial = lambda p: p // 2
    spin = lambda p: p % 2
    for p, q in itertools.product(range(n_so), repeat=2):
        if spin(p) == spin(q):
            H += h_mo[spatial(p), spatial(q)] * adag[p] @ a[q]
    for p, q, r, t in itertools.product(range(n_so), repeat=4):
        # 1/2 sum (pr|qt) a+_p a+_q a_t a_r with spin selection
        if spin(p) == spin(r) and spin(q) == spin(t):
            val = g_mo[spatial(p), spatial(r), spatial(q), spatial(t)]
            if val != 0.0:
                H += 0.5 * val * adag[p] @ adag[q] @ a[t] @ a[r]

    terms = []
    for label in ("".join(x) for x in itertools.product("IXYZ", repeat=n_so)):
        coeff = np.trace(pauli_matrix(label) @ H).real / dim
        if abs(coeff) > 1e-12:
            terms.append({"coeff": float(coeff), "pauli": label})
    terms.sort(key=lambda t: term_rank(t["pauli"]))
    hf = "1100"
    doc = {
        "n_qubits": n_so,
        "reference_state": hf,
        "terms": terms,
    }
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")
    evals = np.linalg.eigvalsh(H)
    idx = int(hf, 2)
    print(f"E0={evals[0]:.6f} E_HF={H[idx, idx]:.6f} gap={evals[1]-evals[0]:.6f} "
          f"one_norm={sum(abs(t['coeff']) for t in terms):.6f}", file=sys.stderr)


if __name__ == "__main__":
    main()
