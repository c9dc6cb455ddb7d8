"""Slow, independent reference implementations used only by the tests."""

import itertools

import numpy as np

from realignment import superop as so


def singular_values_eigh(a):
    """Singular values from the eigenvalues of ``a^dagger a`` (descending)."""
    a = np.asarray(a, dtype=complex)
    ev = np.linalg.eigvalsh(a.conj().T @ a)
    return np.sqrt(np.clip(ev, 0, None))[::-1]


def hs_inner_loops(a, b):
    total = 0j
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            total += np.conj(a[i, j]) * b[i, j]
    return total


def kron_loops(a, b):
    out = np.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]), dtype=complex)
    for i, j, p, q in itertools.product(range(a.shape[0]), range(a.shape[1]), range(b.shape[0]), range(b.shape[1])):
        out[i * b.shape[0] + p, j * b.shape[1] + q] = a[i, j] * b[p, q]
    return out


def unit(d, i, j):
    e = np.zeros((d, d))
    e[i, j] = 1.0
    return e


def expansion_coefficients(op, dim_a, dim_b):
    """Coefficients of ``op`` on the product basis ``|m><n| (x) |mu><nu|``, by HS projection."""
    c = np.zeros((dim_a * dim_a, dim_b * dim_b), dtype=complex)
    for m, n in itertools.product(range(dim_a), repeat=2):
        for mu, nu in itertools.product(range(dim_b), repeat=2):
            basis = np.kron(unit(dim_a, m, n), unit(dim_b, mu, nu))
            c[m * dim_a + n, mu * dim_b + nu] = np.trace(basis.conj().T @ op)
    return c


def partial_trace_loops(op, dim_a, dim_b, keep):
    if keep == "a":
        out = np.zeros((dim_a, dim_a), dtype=complex)
        for m, n, mu in itertools.product(range(dim_a), range(dim_a), range(dim_b)):
            out[m, n] += op[m * dim_b + mu, n * dim_b + mu]
    else:
        out = np.zeros((dim_b, dim_b), dtype=complex)
        for mu, nu, m in itertools.product(range(dim_b), range(dim_b), range(dim_a)):
            out[mu, nu] += op[m * dim_b + mu, m * dim_b + nu]
    return out


def tensor_action_expanded(e_a, e_b, op):
    """Apply ``e_a (x) e_b`` term by term on the matrix-unit expansion of ``op``."""
    dim_a, dim_b = e_a.dim, e_b.dim
    out = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=complex)
    for m, n, mu, nu in itertools.product(range(dim_a), range(dim_a), range(dim_b), range(dim_b)):
        coeff = op[m * dim_b + mu, n * dim_b + nu]
        if e_a.antilinear:
            coeff = np.conj(coeff)
        out += coeff * np.kron(e_a(unit(dim_a, m, n)), e_b(unit(dim_b, mu, nu)))
    return out


def rho_e_from_decomposition(dec, fam):
    """Average over all index tuples of products of summed local images."""
    n = fam.n
    out = 0
    for idx in itertools.product(range(len(dec)), repeat=n):
        w = np.prod([dec.weights[i] for i in idx])
        left = sum(fam.ops_a[k](dec.locals_a[i]) for k, i in enumerate(idx))
        right = sum(fam.ops_b[k](dec.locals_b[i]) for k, i in enumerate(idx))
        out = out + w * np.kron(left, right)
    return out / n


def _ginibre(d, rng):
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def random_superop(d, rng, antilinear):
    """One random map from the sandwich / unitary / transpose menu."""
    kind = rng.integers(3)
    phase = np.exp(2j * np.pi * rng.random())
    if kind == 0:
        u = so.unitary_conjugation(np.linalg.qr(_ginibre(d, rng))[0], antiunitary=antilinear)
        return u.with_phase(phase)
    x, y = _ginibre(d, rng), _ginibre(d, rng)
    x /= np.linalg.norm(x, 2)
    y /= np.linalg.norm(y, 2) * rng.uniform(0.5, 1.5)
    return so.SuperOp(d, x, y, phase, conjugate_input=antilinear, transpose_input=bool(kind == 2))


def random_family(dim_a, dim_b, rng, n=None, antilinear=None):
    """Random family with eps from the operator-norm bound, so the norm condition holds."""
    n = int(rng.integers(1, 4)) if n is None else n
    antilinear = bool(rng.integers(2)) if antilinear is None else antilinear
    ops_a = [random_superop(dim_a, rng, antilinear) for _ in range(n)]
    ops_b = [random_superop(dim_b, rng, antilinear) for _ in range(n)]
    return so.SuperOpFamily(ops_a, ops_b, so.norm_bound_eps(ops_a), so.norm_bound_eps(ops_b))
