import pytest
from fastapi.testclient import TestClient

from sentasm.schemas import (
    FILL_MASK_RESPONSE,
    MRC_RESPONSE,
    SA_RESPONSE,
    SSM_RESPONSE,
    validate,
)
from sentasm_sidecar.cli import main
from sentasm_sidecar.services import ModelLoadError, fill_mask_app, model_app


@pytest.fixture(scope="module")
def mlm_client():
    return TestClient(fill_mask_app("heuristic"))


class TestFillMask:
    def test_protocol_conformance(self, mlm_client):
        resp = mlm_client.post(
            "/fill-mask", json={"text": "a [MASK] fire", "mask_token": "[MASK]", "top_k": 3}
        )
        assert resp.status_code == 200
        body = resp.json()
        validate(body, FILL_MASK_RESPONSE)
        assert len(body["candidates"]) == 3
        scores = [c["score"] for c in body["candidates"]]
        assert scores == sorted(scores, reverse=True)

    def test_missing_mask_token_is_400(self, mlm_client):
        resp = mlm_client.post(
            "/fill-mask", json={"text": "no mask", "mask_token": "[MASK]", "top_k": 3}
        )
        assert resp.status_code == 400
        assert "error" in resp.json()

    def test_bad_types_are_400(self, mlm_client):
        resp = mlm_client.post("/fill-mask", json={"text": "a [MASK]", "mask_token": "[MASK]"})
        assert resp.status_code == 400
        resp = mlm_client.post(
            "/fill-mask", json={"text": "a [MASK]", "mask_token": "[MASK]", "top_k": 0}
        )
        assert resp.status_code == 400

    def test_top_k_respected(self, mlm_client):
        resp = mlm_client.post(
            "/fill-mask", json={"text": "a [MASK] fire", "mask_token": "[MASK]", "top_k": 1}
        )
        assert len(resp.json()["candidates"]) == 1


class TestSaService:
    def test_probs_sum_to_one(self):
        client = TestClient(model_app("sa"))
        resp = client.post("/predict", json={"text": "a lovely bright movie"})
        assert resp.status_code == 200
        body = resp.json()
        validate(body, SA_RESPONSE)
        assert abs(sum(body["probs"].values()) - 1.0) <= 1e-6
        assert body["label"] == max(body["probs"], key=lambda k: body["probs"][k])

    def test_polarity_direction(self):
        client = TestClient(model_app("sa"))
        pos = client.post("/predict", json={"text": "a lovely movie"}).json()
        neg = client.post("/predict", json={"text": "a terrible movie"}).json()
        assert pos["probs"]["positive"] > neg["probs"]["positive"]

    def test_malformed_is_400(self):
        client = TestClient(model_app("sa"))
        assert client.post("/predict", json={"wrong": 1}).status_code == 400


class TestMrcService:
    def test_protocol_conformance(self):
        client = TestClient(model_app("mrc"))
        resp = client.post(
            "/predict",
            json={"paragraph": "The instance is the input. Cats nap.", "question": "What is the input?"},
        )
        assert resp.status_code == 200
        validate(resp.json(), MRC_RESPONSE)

    def test_malformed_is_400(self):
        client = TestClient(model_app("mrc"))
        assert client.post("/predict", json={"paragraph": "x"}).status_code == 400


class TestSsmService:
    def test_protocol_conformance(self):
        client = TestClient(model_app("ssm"))
        resp = client.post("/predict", json={"text_a": "Dogs run.", "text_b": "Dogs run fast."})
        assert resp.status_code == 200
        validate(resp.json(), SSM_RESPONSE)

    def test_identical_texts_are_duplicates(self):
        client = TestClient(model_app("ssm"))
        body = client.post("/predict", json={"text_a": "Dogs run.", "text_b": "Dogs run."}).json()
        assert body["duplicate"] == 1

    def test_disjoint_texts_are_not(self):
        client = TestClient(model_app("ssm"))
        body = client.post(
            "/predict", json={"text_a": "Dogs run.", "text_b": "Planes fly very high."}
        ).json()
        assert body["duplicate"] == 0

    def test_malformed_is_400(self):
        client = TestClient(model_app("ssm"))
        assert client.post("/predict", json={"text_a": "x"}).status_code == 400


class TestModelLoading:
    def test_unknown_task_rejected(self):
        with pytest.raises(ModelLoadError):
            model_app("mt")

    def test_unloadable_model_rejected(self):
        with pytest.raises(ModelLoadError):
            model_app("sa", model="not-a-real-model")

    def test_serve_model_load_failure_exit_code(self):
        assert main(["serve-model", "--task", "sa", "--model", "nope"]) == 3
