import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from rankfreq import (GeneratorSpec, KernelBoundaryDetector, PiecewiseZipfLaw, TextCleaner,
                      VocabularyExtrapolator, ZipfRegressor, sample_table)


@pytest.fixture(scope="module")
def table():
    return sample_table(GeneratorSpec(PiecewiseZipfLaw(1.0, 1.6, 800), 50_000, 10**6, seed=0))


@pytest.mark.parametrize("est", [TextCleaner(lowercase=False), ZipfRegressor(r_hi=500),
                                 KernelBoundaryDetector(delta=0.3),
                                 VocabularyExtrapolator(r_lo=10)])
def test_params_and_clone(est):
    params = est.get_params()
    twin = clone(est)
    assert twin.get_params() == params
    twin.set_params(**params)


def test_text_cleaner():
    cleaner = TextCleaner(variant_merge_groups=[("і", frozenset({"й", "та"}))])
    out = cleaner.fit_transform(["Мати й батько", "сонце та 2024 вітер"])
    assert out == [["мати", "і", "батько"], ["сонце", "і", "вітер"]]
    assert cleaner.report_.removed_numbers == 1
    with pytest.raises(TypeError):
        cleaner.transform("one string")


def test_zipf_regressor(table):
    est = ZipfRegressor(r_hi=800).fit(table)
    assert abs(est.z_ - 1.0) < 0.05
    ranks = np.array([1, 10, 100])
    assert np.allclose(est.predict(ranks), est.A_ / ranks ** est.z_)
    with pytest.raises(NotFittedError):
        ZipfRegressor().predict(ranks)


def test_kernel_detector(table):
    det = KernelBoundaryDetector().fit(table)
    assert abs(det.r_max_ - 800) <= 100
    boundary, left, right = det.two_segment_
    assert abs(boundary.r_max - 800) <= 100 and not boundary.degenerate
    assert left.z < right.z
    with pytest.raises(NotFittedError):
        KernelBoundaryDetector().r_max_


def test_vocabulary_extrapolator(table):
    est = VocabularyExtrapolator().fit(table)
    assert est.model_.r_lo == 800
    assert 0 < est.R_ < np.inf
    assert est.predict([1])[0] == pytest.approx(est.model_.A - est.model_.B)
    with pytest.raises(NotFittedError):
        VocabularyExtrapolator().predict([1])
