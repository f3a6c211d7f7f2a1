import numpy as np
import pytest

from qutrit_lab import ops
from qutrit_lab.dynamics import DmHamiltonianSpec, Evolution
from qutrit_lab.errors import DomainError, ShapeError
from qutrit_lab.linalg import singular_values, trace_norm
from qutrit_lab.ops import DensityMatrix
from qutrit_lab.states import JurkowskiParams, jurkowski_state

import oracles


def dm(m, dims):
    return DensityMatrix(m, dims)


class TestDensityMatrix:
    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            DensityMatrix(np.eye(9) / 9, (3, 2))

    def test_dims_at_least_two(self):
        with pytest.raises(ShapeError):
            DensityMatrix(np.eye(3) / 3, (3, 1))

    def test_immutable(self):
        rho = ops.maximally_mixed((3, 3))
        with pytest.raises(ValueError):
            rho.mat[0, 0] = 1


class TestValidate:
    def test_maximally_mixed(self):
        r = ops.validate(ops.maximally_mixed((3, 3)))
        assert r.hermiticity <= 1e-12
        assert r.trace_deviation <= 1e-12
        assert abs(r.min_eigenvalue - 1 / 9) <= 1e-12
        assert r.ok()

    def test_trace_two(self):
        r = ops.validate(dm(2 * np.eye(9) / 9, (3, 3)))
        assert r.trace_deviation == pytest.approx(1.0, abs=1e-12)
        assert not r.ok()

    def test_evolved_composite_positive(self):
        ev = Evolution(JurkowskiParams(1, 1, 0.3), spec=DmHamiltonianSpec(0.2))
        rho = ev.composite(5.0)
        assert rho.dims == (3, 3, 3)
        w = np.linalg.eigvalsh(rho.mat)
        assert w.min() >= -1e-9
        assert ops.validate(rho).ok()


class TestPartialTrace:
    def test_product_factorizes(self, rng):
        ab = dm(oracles.random_density(9, rng), (3, 3))
        c = dm(oracles.random_density(3, rng), (3,))
        out = ops.partial_trace(ops.tensor(ab, c), 2)
        assert out.dims == (3, 3)
        assert np.max(np.abs(out.mat - ab.mat)) <= 1e-12

    @pytest.mark.parametrize("index", [0, 1])
    def test_maximally_entangled_marginal(self, index):
        out = ops.partial_trace(ops.maximally_entangled(3), index)
        np.testing.assert_allclose(out.mat, np.eye(3) / 3, atol=1e-15)

    def test_trace_preserved_against_oracle(self, backend, rng):
        for dims in [(3, 3), (3, 3, 3), (2, 3)]:
            n = int(np.prod(dims))
            rho = dm(oracles.random_density(n, rng), dims)
            for k in range(len(dims)):
                out = ops.partial_trace(rho, k)
                ref = oracles.partial_trace(rho.mat, dims, k)
                assert np.max(np.abs(out.mat - ref)) <= 1e-12
                assert abs(out.trace() - rho.trace()) <= 1e-12

    def test_index_out_of_range(self):
        with pytest.raises(DomainError):
            ops.partial_trace(ops.maximally_mixed((3, 3)), 2)

    def test_single_subsystem(self):
        with pytest.raises(DomainError):
            ops.partial_trace(ops.maximally_mixed((3,)), 0)


class TestPartialTranspose:
    def test_product(self, rng):
        a, b = oracles.random_density(3, rng), oracles.random_density(3, rng)
        out = ops.partial_transpose(dm(np.kron(a, b), (3, 3)), 1)
        np.testing.assert_allclose(out, np.kron(a, b.T), atol=1e-15)

    @pytest.mark.parametrize("index", [0, 1])
    def test_involution(self, rng, index):
        rho = dm(oracles.random_density(9, rng), (3, 3))
        twice = ops.partial_transpose(dm(ops.partial_transpose(rho, index), (3, 3)), index)
        assert np.max(np.abs(twice - rho.mat)) <= 1e-14

    def test_maximally_entangled_spectrum(self):
        rho = ops.maximally_entangled(3)
        brute = np.linalg.eigvalsh(oracles.partial_transpose(rho.mat, 3, 3, 1))
        assert brute[0] == pytest.approx(-1 / 3, abs=1e-12)
        w = np.linalg.eigvalsh(ops.partial_transpose(rho, 1))
        np.testing.assert_allclose(w, brute, atol=1e-12)
        # flip operator / 3: six eigenvalues +1/3, three -1/3
        assert np.sum(np.isclose(w, 1 / 3)) == 6 and np.sum(np.isclose(w, -1 / 3)) == 3

    def test_requires_bipartite(self):
        with pytest.raises(DomainError):
            ops.partial_transpose(ops.maximally_mixed((3, 3, 3)), 1)


class TestRealign:
    def test_zero(self):
        out = ops.realign(np.zeros((9, 9)), (3, 3))
        assert out.shape == (9, 9) and not out.any()

    def test_rank_one(self, rng):
        a, b, c, d = (rng.standard_normal(3) + 1j * rng.standard_normal(3) for _ in range(4))
        m = np.kron(np.outer(a, b.conj()), np.outer(c, d.conj()))
        brute = np.linalg.svd(oracles.realign(m, 3, 3), compute_uv=False)
        expected = np.prod([np.linalg.norm(v) for v in (a, b, c, d)])
        assert brute[0] == pytest.approx(expected, rel=1e-12)
        s = singular_values(ops.realign(m, (3, 3)))
        assert s[0] == pytest.approx(expected, rel=1e-12)
        assert np.all(s[1:] <= 1e-12 * expected)

    def test_maximally_mixed(self):
        m = np.eye(9) / 9
        brute = np.sum(np.linalg.svd(oracles.realign(m, 3, 3), compute_uv=False))
        assert brute == pytest.approx(1 / 3, abs=1e-12)
        assert trace_norm(ops.realign(m, (3, 3))) == pytest.approx(1 / 3, abs=1e-12)

    def test_inverse(self, rng):
        m = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        np.testing.assert_array_equal(ops.unrealign(ops.realign(m, (2, 3)), (2, 3)), m)

    def test_shape_error(self):
        with pytest.raises(ShapeError):
            ops.realign(np.eye(8), (3, 3))


class TestReducedPairAndPurity:
    def test_product(self, rng):
        a, b = oracles.random_density(3, rng), oracles.random_density(3, rng)
        ra, rb = ops.reduced_pair(dm(np.kron(a, b), (3, 3)))
        assert np.max(np.abs(ra.mat - a)) <= 1e-12
        assert np.max(np.abs(rb.mat - b)) <= 1e-12

    def test_jurkowski_unit_trace(self):
        ra, rb = ops.reduced_pair(jurkowski_state(JurkowskiParams(1, 1, 1)))
        assert abs(ra.trace() - 1) <= 1e-12 and abs(rb.trace() - 1) <= 1e-12

    def test_marginal_purity_bounded(self, rng):
        for _ in range(20):
            rho = dm(oracles.random_density(9, rng), (3, 3))
            for r in ops.reduced_pair(rho):
                assert oracles.purity(r.mat) <= 1 + 1e-10
                assert ops.purity(r) == pytest.approx(oracles.purity(r.mat), abs=1e-13)

    def test_pure(self):
        assert ops.purity(ops.maximally_entangled(3)) == pytest.approx(1.0, abs=1e-14)

    def test_mixed_qutrit(self):
        assert ops.purity(ops.maximally_mixed((3,))) == pytest.approx(1 / 3, abs=1e-15)

    def test_jurkowski_marginal_purity(self):
        ra, rb = ops.reduced_pair(jurkowski_state(JurkowskiParams(1, 1, 1)))
        # brute force: both marginals are diag(3, 3, 3)/9
        brute = oracles.purity(oracles.partial_trace(jurkowski_state((1, 1, 1)).mat, (3, 3), 1))
        assert brute == pytest.approx(1 / 3, abs=1e-14)
        assert ops.purity(ra) == pytest.approx(1 / 3, abs=1e-14)
        assert ops.purity(rb) == pytest.approx(1 / 3, abs=1e-14)
