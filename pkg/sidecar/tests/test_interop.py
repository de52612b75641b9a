"""Drive live sidecar services with the engine's own protocol clients."""

import threading
import time

import uvicorn

from sentasm.harness import ModelClient, ModelEndpoint
from sentasm.metamorphic import MrcTest, SsmTest
from sentasm.harness import run_mrc, run_ssm
from sentasm.mutation import MlmClient, mlm_candidates
from sentasm_sidecar.services import fill_mask_app, model_app


class LiveServer:
    def __init__(self, app):
        config = uvicorn.Config(app, host="127.0.0.1", port=0, log_level="error")
        self.server = uvicorn.Server(config)
        self.thread = threading.Thread(target=self.server.run, daemon=True)

    def __enter__(self):
        self.thread.start()
        deadline = time.monotonic() + 10
        while not self.server.started:
            if time.monotonic() > deadline:
                raise RuntimeError("sidecar service did not start")
            time.sleep(0.01)
        port = self.server.servers[0].sockets[0].getsockname()[1]
        self.url = f"http://127.0.0.1:{port}"
        return self

    def __exit__(self, *exc):
        self.server.should_exit = True
        self.thread.join(timeout=5)


def test_engine_mlm_client_against_live_service():
    with LiveServer(fill_mask_app("heuristic")) as live:
        client = MlmClient(live.url)
        pairs = client.fill("a [MASK] fire", 3)
        assert 1 <= len(pairs) <= 3
        scores = [s for _t, s in pairs]
        assert scores == sorted(scores, reverse=True)
        words = mlm_candidates(client, "a [MASK] fire", "kitchen", frozenset({"the"}), 3)
        assert words and all(w.isalpha() for w in words)


def test_engine_model_client_against_live_sa():
    with LiveServer(model_app("sa")) as live:
        client = ModelClient(ModelEndpoint(task="sa", base_url=live.url))
        pred = client.sa_predict("a lovely bright movie")
        assert abs(sum(pred.probs.values()) - 1.0) <= 1e-6
        assert pred.label == "positive"


def test_engine_model_client_against_live_mrc_and_ssm():
    with LiveServer(model_app("mrc")) as live:
        client = ModelClient(ModelEndpoint(task="mrc", base_url=live.url))
        test = MrcTest(
            id="m1", paragraph="The brown dog ran home.", question="Who ran home?",
            gold_answers=("dog",), seed_id="s", leaf_ids=(),
        )
        run_mrc(test, client)  # protocol-level: must parse cleanly either way
    with LiveServer(model_app("ssm")) as live:
        client = ModelClient(ModelEndpoint(task="ssm", base_url=live.url))
        test = SsmTest(
            id="p1", text_a="Dogs run.", text_b="Planes fly far away.",
            level_a=0, level_b=1, tree_id="t", node_a="a", node_b="b",
        )
        assert run_ssm(test, client) is None  # disjoint texts are not duplicates
