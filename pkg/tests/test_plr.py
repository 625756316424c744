import math

import numpy as np
import pytest

from corpus.types import Dataset
from patterns.pattern import Pattern
from plr.flx import flx, flx_for_class
from plr.model import (
    PlrModel,
    extract_features,
    load_model,
    predict,
    predicted_class,
    save_model,
    sigmoid,
)
from plr.training import TrainingConfig, loss_and_gradient, train, training_accuracy
from utils.helpers import ConfigError, DataError, ModelFormatError

from .generators import make_document


class TestSigmoid:
    def test_symmetry(self):
        for z in np.linspace(-50, 50, 201):
            assert sigmoid(z) + sigmoid(-z) == pytest.approx(1.0, abs=1e-12)

    def test_no_overflow(self):
        assert sigmoid(1000.0) == 1.0
        assert sigmoid(-1000.0) == 0.0

    def test_threshold(self):
        assert predicted_class(0.5) == 1
        assert predicted_class(0.4999) == 0


class TestRunningExample:
    def test_features(self, running_model, running_doc):
        assert extract_features(running_model, running_doc) == (1, 1, 1, 1)

    def test_prediction(self, running_model, running_doc):
        y_hat, p_one = predict(running_model, running_doc)
        assert y_hat == 1
        assert p_one == pytest.approx(0.5744, abs=5e-5)
        assert running_model.logit((1, 1, 1, 1)) == pytest.approx(0.3)

    def test_flx_order(self, running_model, running_doc):
        items = flx(running_model, running_doc, k=4)
        assert [i.pattern_index for i in items] == [2, 3, 1, 0]
        assert [i.contribution for i in items] == [1.2, 0.5, -0.4, -0.9]
        assert items[0].span.token_indices == (3,)

    def test_flx_truncates(self, running_model, running_doc):
        assert [i.pattern_index for i in flx(running_model, running_doc, k=2)] == [2, 3]
        assert flx(running_model, running_doc, k=0) == []
        with pytest.raises(ValueError):
            flx(running_model, running_doc, k=-1)

    def test_flx_toward_class_zero(self, running_model, running_doc):
        items = flx_for_class(running_model, running_doc, 0, k=4)
        assert [i.pattern_index for i in items] == [0, 1, 3, 2]

    def test_unmatched_patterns_are_skipped(self, running_model):
        doc = make_document("ab")
        assert extract_features(running_model, doc) == (0, 0, 0, 0)
        assert flx(running_model, doc, k=5) == []
        assert predict(running_model, doc) == (0, sigmoid(-0.1))


class TestModelFile:
    def test_round_trip(self, running_model, tmp_path):
        save_model(running_model, tmp_path / "m.json")
        again = load_model(tmp_path / "m.json")
        assert again == running_model
        assert again.meta == running_model.meta

    def test_weights_written_as_decimal_strings(self, running_model):
        payload = running_model.to_dict()
        assert payload["weights"] == ["-0.9", "-0.4", "1.2", "0.5"]
        assert payload["bias"] == "-0.1"

    @pytest.mark.parametrize(
        "payload",
        [
            [],
            {"patterns": [], "weights": []},
            {"patterns": [{"slots": [["TEXT:a"]], "gaps": 0}], "weights": [], "bias": "0"},
            {"patterns": [], "weights": [], "bias": "nan"},
            {"patterns": [], "weights": [], "bias": "abc"},
        ],
    )
    def test_malformed(self, payload):
        with pytest.raises(ModelFormatError):
            PlrModel.from_dict(payload)

    def test_mismatched_lengths(self):
        with pytest.raises(DataError):
            PlrModel((Pattern.of(["TEXT:a"]),), (), 0.0)

    def test_wrong_feature_length(self, running_model):
        with pytest.raises(DataError):
            running_model.logit((1, 0))


class TestTraining:
    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(7)
        X = rng.integers(0, 2, size=(12, 5)).astype(np.float64)
        y = rng.integers(0, 2, size=12).astype(np.float64)
        w = rng.normal(size=5)
        b = 0.3
        _, grad_w, grad_b = loss_and_gradient(w, b, X, y, 0.01)
        h = 1e-6
        for i in range(5):
            step = np.zeros(5)
            step[i] = h
            numeric = (loss_and_gradient(w + step, b, X, y, 0.01)[0] - loss_and_gradient(w - step, b, X, y, 0.01)[0]) / (2 * h)
            assert grad_w[i] == pytest.approx(numeric, abs=1e-6)
        numeric_b = (loss_and_gradient(w, b + h, X, y, 0.01)[0] - loss_and_gradient(w, b - h, X, y, 0.01)[0]) / (2 * h)
        assert grad_b == pytest.approx(numeric_b, abs=1e-6)

    def test_loss_at_zero_is_log_two(self):
        X = np.ones((4, 2))
        y = np.array([0.0, 1.0, 0.0, 1.0])
        loss, _, _ = loss_and_gradient(np.zeros(2), 0.0, X, y, 0.5)
        assert loss == pytest.approx(math.log(2))

    def test_separable_data(self):
        docs = [make_document(s, f"d{i}", label) for i, (s, label) in enumerate(
            [("ab", 1), ("abc", 1), ("ba", 1), ("cd", 0), ("dc", 0), ("ecd", 0)]
        )]
        data = Dataset(tuple(docs))
        patterns = [Pattern.of(["TEXT:a"]), Pattern.of(["TEXT:d"]), Pattern.of(["TEXT:c"])]
        result = train(data, patterns, TrainingConfig(epochs=300))
        assert training_accuracy(result.model, data) == 1.0
        assert result.model.weights[0] > 0 > result.model.weights[1]
        assert result.history[-1] < result.history[0]
        assert result.model.meta["epochs"] == 300

    @pytest.fixture
    def noisy(self):
        rows = [("ab", 1), ("abc", 1), ("bd", 1), ("ad", 1), ("cb", 1), ("ac", 0),
                ("cd", 0), ("dc", 0), ("bd", 0), ("ecd", 0), ("a", 0), ("eb", 1)]
        data = Dataset(tuple(make_document(s, f"n{i}", label) for i, (s, label) in enumerate(rows)))
        patterns = [Pattern.of(["TEXT:a"]), Pattern.of(["TEXT:b"]), Pattern.of(["TEXT:c"]), Pattern.of(["TEXT:d"])]
        return data, patterns

    def test_stronger_l2_never_grows_the_weights(self, noisy):
        data, patterns = noisy
        norms = []
        for l2 in (0.01, 0.02, 0.04, 0.08):
            model = train(data, patterns, TrainingConfig(l2_lambda=l2, epochs=4000)).model
            norms.append(float(np.linalg.norm(model.weights)))
        assert all(later <= earlier + 1e-9 for earlier, later in zip(norms, norms[1:]))
        assert norms[-1] < norms[0]

    def test_small_steps_never_increase_the_loss(self, noisy):
        data, patterns = noisy
        history = train(data, patterns, TrainingConfig(learning_rate=0.01, epochs=500)).history
        assert len(history) == 500
        assert all(later <= earlier + 1e-12 for earlier, later in zip(history, history[1:]))
        assert history[-1] < history[0]

    def test_deterministic(self, synthetic_corpus):
        patterns = [Pattern.of(["PROMO:yes"]), Pattern.of(["WORK:yes"])]
        first = train(synthetic_corpus, patterns, TrainingConfig(epochs=50))
        second = train(synthetic_corpus, patterns, TrainingConfig(epochs=50))
        assert first.model.weights == second.model.weights
        assert first.model.bias == second.model.bias

    def test_zero_epochs_gives_zero_model(self, synthetic_corpus):
        result = train(synthetic_corpus, [Pattern.of(["PROMO:yes"])], TrainingConfig(epochs=0))
        assert result.model.weights == (0.0,)
        assert result.history == []

    @pytest.mark.parametrize(
        "config",
        [TrainingConfig(learning_rate=0), TrainingConfig(l2_lambda=-1), TrainingConfig(epochs=-1)],
    )
    def test_invalid_config(self, synthetic_corpus, config):
        with pytest.raises(ConfigError):
            train(synthetic_corpus, [], config)
