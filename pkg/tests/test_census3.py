# tests/test_census3.py

from collections import Counter
from itertools import product

import pytest

from src.core.census2 import enumerate2
from src.core.census3 import (
    ThreefoldClass,
    attach_basis3,
    bivector_from_class3,
    check_class3,
    class_from_lambda3,
    classify3,
    cubic_defect,
    degree3,
    det_identity3,
    enumerate3,
    essential_coords3,
    quadratic_conditions_hold,
    reconstruct3,
)
from src.core.cm import CmParams, LatticeVector, NoCm, Polarization, bar, qform_representations
from src.core.errors import DimensionMismatch, InvalidClass, NotPrimitive, PreconditionViolated
from src.core.exterior import content, is_elliptic_basis, is_primitive, normalize_sign, wedge
from src.core.models import CurveKind

from conftest import SWEEP_CMS, cm_grid


def vec(*coords):
    return LatticeVector.from_coords(coords)


def cm_of(triple):
    return CmParams(u=triple[0], v=triple[1], w=triple[2])


class TestEnumerate:
    def test_gaussian_degree_three(self, gaussian, principal3):
        records = enumerate3(gaussian, principal3, 3)
        kinds = Counter(r.kind for r in records)
        assert len(records) == 55
        assert kinds[CurveKind.ORDINARY] == 13
        assert kinds[CurveKind.EXTRA_ORDINARY] == 42
        assert Counter(r.degree for r in records) == {1: 3, 2: 12, 3: 40}

    def test_eisenstein_degree_three(self, eisenstein, principal3):
        records = enumerate3(eisenstein, principal3, 3)
        assert len(records) == 57
        assert Counter(r.degree for r in records) == {1: 3, 2: 18, 3: 36}

    def test_factor_curves_come_first(self, gaussian, principal3):
        records = enumerate3(gaussian, principal3, 1)
        assert [r.coords for r in records] == [
            (0, 0, 1, 0, 0, 0, 0, 0, 0),
            (0, 1, 0, 0, 0, 0, 0, 0, 0),
            (1, 0, 0, 0, 0, 0, 0, 0, 0),
        ]

    def test_missing_curve_is_listed(self, gaussian, principal3):
        # lambda = (1, 1, 0 | 1, 0, 0), the graph of 1 + i restricted to the first two factors
        coords = {r.coords for r in enumerate3(gaussian, principal3, 3)}
        assert (2, 1, 0, 1, 0, 0, -1, 0, 0) in coords

    def test_without_cm(self, principal3):
        records = enumerate3(NoCm(), principal3, 3)
        assert len(records) == 13
        assert all(r.kind is CurveKind.ORDINARY for r in records)

    def test_negative_degree(self, gaussian, principal3):
        with pytest.raises(PreconditionViolated):
            enumerate3(gaussian, principal3, -2)

    def test_wrong_polarization(self, gaussian, principal2):
        with pytest.raises(DimensionMismatch):
            enumerate3(gaussian, principal2, 3)

    @pytest.mark.parametrize("triple", SWEEP_CMS)
    def test_records_are_valid_sorted_and_distinct(self, triple):
        cm, pol = cm_of(triple), Polarization(multipliers=(1, 1, 2))
        records = enumerate3(cm, pol, 5)
        assert records == sorted(records, key=lambda r: r.sort_key)
        assert len({r.coords for r in records}) == len(records)
        for r in records:
            assert check_class3(cm, r.coords)
            assert r.degree == degree3(pol, r.coords) <= 5

    @pytest.mark.parametrize("triple", SWEEP_CMS)
    def test_classes_without_third_factor_match_surfaces(self, triple):
        cm = cm_of(triple)
        threefold = enumerate3(cm, Polarization(multipliers=(1, 2, 1)), 5)
        flat = {
            (r.coords[0], r.coords[1], r.coords[3], r.coords[6])
            for r in threefold
            if r.coords[2] == 0
        }
        surfaces = {r.coords for r in enumerate2(cm, Polarization(multipliers=(1, 2)), 5)}
        assert flat == surfaces

    def test_worker_count_does_not_change_result(self, gaussian):
        pol = Polarization(multipliers=(1, 1, 2))
        assert enumerate3(gaussian, pol, 5, threads=3) == enumerate3(gaussian, pol, 5)

    @pytest.mark.slow
    def test_maximum_at_degree_three(self):
        counts = {
            (triple, pol): len(enumerate3(cm_of(triple), Polarization(multipliers=pol), 3))
            for triple in cm_grid()
            for pol in product(range(1, 4), repeat=3)
        }
        best = max(counts.values())
        assert best == 57
        for (triple, pol), n in counts.items():
            if n == best:
                assert pol == (1, 1, 1)
                assert cm_of(triple).disc == -3


class TestClasses:
    def test_valid_and_invalid(self, gaussian):
        assert check_class3(gaussian, (1, 1, 1, 1, 1, 1, 0, 0, 0))
        assert check_class3(gaussian, (2, 1, 0, 1, 0, 0, -1, 0, 0))
        assert not check_class3(gaussian, (1, 1, 1, 1, 1, -1, 0, 0, 0))
        assert not check_class3(gaussian, (2, 2, 2, 2, 2, 2, 0, 0, 0))
        assert not check_class3(gaussian, (-1, 0, 0, 0, 0, 0, 0, 0, 0))

    def test_cubic_defect(self, gaussian):
        assert cubic_defect(gaussian, (1, 1, 1, 1, 1, -1, 0, 0, 0)) == 4
        assert cubic_defect(gaussian, (1, 1, 1, 1, 1, 1, 0, 0, 0)) == 0
        assert quadratic_conditions_hold(gaussian, (1, 1, 1, 1, 1, -1, 0, 0, 0))

    def test_class_from_lambda(self, gaussian):
        s = class_from_lambda3(gaussian, vec(1, 1, 0, 1, 0, 0))
        assert s == ThreefoldClass.from_coords((2, 1, 0, 1, 0, 0, -1, 0, 0))
        assert classify3(s) is CurveKind.EXTRA_ORDINARY
        assert degree3(Polarization(multipliers=(1, 1, 1)), s) == 3

    def test_class_from_lambda_rejects(self, gaussian):
        with pytest.raises(NotPrimitive):
            class_from_lambda3(gaussian, vec(0, 2, 0, 0, 2, 0))
        with pytest.raises(DimensionMismatch):
            class_from_lambda3(gaussian, vec(1, 0, 0, 1))

    def test_from_coords_length(self):
        with pytest.raises(DimensionMismatch):
            ThreefoldClass.from_coords((1, 0, 0))

    @pytest.mark.parametrize("triple", SWEEP_CMS + [(0, 1, 2), (1, 2, 3)])
    def test_bivector_matches_wedge(self, triple, rng):
        cm = cm_of(triple)
        for _ in range(300):
            lam = vec(*(rng.randint(-3, 3) for _ in range(6)))
            if not is_primitive(lam.coords):
                continue
            omega = wedge(lam, bar(cm, lam)).coords
            r = content(omega)
            s = class_from_lambda3(cm, lam)
            assert check_class3(cm, s)
            assert bivector_from_class3(cm, s).coords == tuple(x // r for x in omega)


class TestDeterminantIdentity:
    @pytest.mark.parametrize(
        "s, expected",
        [
            ((1, 1, 1, 1, 1, -1, 0, 0, 0), (4, 4)),
            ((1, 1, 1, 1, 1, 1, 0, 0, 0), (0, 0)),
            ((1, 1, 0, 0, 0, 0, 1, 0, 0), (0, 0)),
        ],
    )
    def test_examples(self, gaussian, s, expected):
        assert det_identity3(gaussian, s) == expected

    @pytest.mark.parametrize("triple", SWEEP_CMS + [(1, 2, 3)])
    def test_holds_when_quadratic_relations_hold(self, triple, rng):
        cm = cm_of(triple)
        checked = 0
        while checked < 300:
            alpha, beta, gamma = (rng.randint(0, 6) for _ in range(3))
            reps = [qform_representations(cm, n) for n in (alpha * beta, alpha * gamma, beta * gamma)]
            if not all(reps):
                continue
            (delta, eta), (epsilon, theta), (zeta, iota) = (rng.choice(r) for r in reps)
            s = (alpha, beta, gamma, delta, epsilon, zeta, eta, theta, iota)
            det, rhs = det_identity3(cm, s)
            assert det == rhs
            checked += 1

    @pytest.mark.slow
    @pytest.mark.parametrize("triple", SWEEP_CMS)
    def test_holds_on_tuples_from_random_lambda(self, triple, rng):
        cm = cm_of(triple)
        checked = 0
        while checked < 1000:
            lam = vec(*(rng.randint(-4, 4) for _ in range(6)))
            if not is_primitive(lam.coords):
                continue
            # the unscaled wedge and its normalized class
            raw = essential_coords3(cm.u, cm.v, cm.w, lam.real_part, lam.tau_part)
            for s in (raw, class_from_lambda3(cm, lam).coords):
                det, rhs = det_identity3(cm, s)
                assert det == rhs
            checked += 1

    def test_requires_quadratic_relations(self, gaussian):
        with pytest.raises(PreconditionViolated):
            det_identity3(gaussian, (1, 1, 1, 1, 1, 1, 1, 0, 0))

    @pytest.mark.parametrize("triple", SWEEP_CMS)
    def test_vanishes_on_classes(self, triple, principal3):
        cm = cm_of(triple)
        for record in enumerate3(cm, principal3, 4):
            assert det_identity3(cm, record.coords) == (0, 0)


class TestReconstruct:
    def test_standard_factor(self, gaussian):
        lam, mu = reconstruct3(gaussian, (1, 0, 0, 0, 0, 0, 0, 0, 0))
        assert lam.coords == (1, 0, 0, 0, 0, 0)
        assert mu.coords == (0, 0, 0, 1, 0, 0)

    def test_invalid_class(self, gaussian):
        with pytest.raises(InvalidClass):
            reconstruct3(gaussian, (1, 1, 1, 1, 1, -1, 0, 0, 0))

    @pytest.mark.parametrize("triple", SWEEP_CMS + [(0, 1, 2), (1, 2, 3)])
    def test_round_trip_over_census(self, triple, principal3):
        cm = cm_of(triple)
        for record in enumerate3(cm, principal3, 4):
            lam, mu = reconstruct3(cm, record.coords)
            assert class_from_lambda3(cm, lam).coords == record.coords
            assert wedge(lam, mu).coords == bivector_from_class3(cm, record.coords).coords
            assert is_elliptic_basis(cm, lam, mu)

    def test_attach_basis(self, eisenstein, principal3):
        record = enumerate3(eisenstein, principal3, 3)[-1]
        with_basis = attach_basis3(eisenstein, record)
        lam = vec(*with_basis.basis.lam)
        assert class_from_lambda3(eisenstein, lam).coords == record.coords
