import pytest

from sentasm.assembly import build_derivation_tree, original_only_mutator
from sentasm.disassembly import disassemble
from sentasm.ingest import MrcSeed, load_mrc_seeds
from sentasm.metamorphic import (
    MrcGenConfig,
    gen_mrc_tests,
    gen_sa_tests,
    gen_ssm_tests,
    read_suite,
    sa_probes,
    to_suite_record,
    write_suite,
)
from sentasm.schemas import TEST_RECORD_FOR_TASK, validate

from conftest import SEEDS_DIR
from oracles import deletion_derivable, enumerate_ssm_pairs
from treekit import scripted_mutator, synthetic_template


@pytest.fixture(scope="module")
def chain_tree(corpus):
    return build_derivation_tree(disassemble(corpus["fire1"]), original_only_mutator())


@pytest.fixture(scope="module")
def mrc_seeds(corpus):
    return {s.id: s for s in load_mrc_seeds(SEEDS_DIR / "mrc.json", corpus)}


class TestGenSa:
    def test_chain_edges(self, chain_tree):
        tests = gen_sa_tests(chain_tree)
        assert len(tests) == 2
        assert tests[0].parent_text == "Downtown Jacksonville was ravaged by a fire."
        assert tests[0].adjunct_text == "On May 3"
        assert tests[1].adjunct_text == "that started as a kitchen fire"

    def test_zero_slot_tree(self, corpus):
        tree = build_derivation_tree(disassemble(corpus["pj0"]), original_only_mutator())
        assert gen_sa_tests(tree) == []

    def test_edge_count_matches_level_sizes(self):
        # levels (1, 3, 4) -> 3 + 4 = 7 edge tests
        template = synthetic_template(2)
        tree = build_derivation_tree(template, scripted_mutator([3, 2]), beam_size=4)
        assert [len(level) for level in tree.levels] == [1, 3, 4]
        assert len(gen_sa_tests(tree)) == 7

    def test_child_differs_by_inserted_adjunct(self, corpus):
        for sid in ("fire1", "pa2", "pm0"):
            template = disassemble(corpus[sid])
            tree = build_derivation_tree(template, original_only_mutator())
            by_id = tree.by_id()
            for test in gen_sa_tests(tree):
                child = by_id[test.child_id]
                parent = by_id[child.parent]
                assert deletion_derivable(template, parent, child)

    def test_probes_distinct(self, chain_tree):
        tests = gen_sa_tests(chain_tree)
        assert sa_probes(tests) == sorted({t.adjunct_text for t in tests})


class TestGenSsm:
    def test_chain_pairs(self, chain_tree):
        tests = gen_ssm_tests(chain_tree)
        assert len(tests) == 3
        assert {(t.level_a, t.level_b) for t in tests} == {(0, 1), (0, 2), (1, 2)}

    def test_single_node_tree(self, corpus):
        tree = build_derivation_tree(disassemble(corpus["pj0"]), original_only_mutator())
        assert gen_ssm_tests(tree) == []

    def test_pair_count_matches_enumeration(self):
        template = synthetic_template(2)
        mutator = scripted_mutator([2, 2])
        tree = build_derivation_tree(template, mutator)
        tests = gen_ssm_tests(tree)
        variants_per_slot = [
            [v.forms for v in mutator(slot, tree.root)] for slot in template.slots
        ]
        oracle_pairs = enumerate_ssm_pairs(template, variants_per_slot)
        assert {(t.text_a, t.text_b) for t in tests} == oracle_pairs

    def test_pairs_lie_on_paths(self, corpus):
        template = disassemble(corpus["pm0"])
        tree = build_derivation_tree(template, original_only_mutator())
        by_id = tree.by_id()
        for test in gen_ssm_tests(tree):
            assert deletion_derivable(template, by_id[test.node_a], by_id[test.node_b])

    def test_stopword_only_delta_dropped(self, stopwords):
        from sentasm.disassembly import Adjunct, DerivationTemplate
        from sentasm.ingest import Token

        the = Token(0, "the", "the", "DET")
        base = (Token(1, "dogs", "dog", "NOUN"), Token(2, "run", "run", "VERB"))
        template = DerivationTemplate(
            source_id="stop1",
            base_tokens=base,
            slots=(
                Adjunct(
                    slot_index=1,
                    tokens=(the,),
                    kind="ADJ",
                    leading_comma=False,
                    trailing_comma=False,
                    anchor=-1,
                    span=(0, 1),
                ),
            ),
            seed_tokens=(the,) + base,
        )
        tree = build_derivation_tree(template, original_only_mutator())
        assert gen_ssm_tests(tree, stopwords) == []
        assert len(gen_ssm_tests(tree, frozenset())) == 1


class TestGenMrc:
    def test_manner_substitution_paragraph(self, mrc_seeds, corpus, resources):
        tests = gen_mrc_tests(mrc_seeds["q-instance"], corpus, resources, MrcGenConfig())
        assert len(tests) == 1
        test = tests[0]
        assert "Stated another manner," in test.paragraph
        assert test.gold_answers == ("instance",)
        # the unmutated sentence region is byte-identical
        assert corpus["sol1"].text in test.paragraph

    def test_cartesian_bound_and_noop_drop(self, mrc_seeds, corpus, resources):
        seed = mrc_seeds["q-cartesian"]
        tests = gen_mrc_tests(seed, corpus, resources, MrcGenConfig(rng_seed=42))
        # 4 sentences x 4 leaves = 256 combinations, minus the all-original no-op
        assert len(tests) == 255
        assert len(tests) <= 256
        assert len({t.paragraph for t in tests}) == 255

    def test_determinism(self, mrc_seeds, corpus, resources):
        seed = mrc_seeds["q-cartesian"]
        first = gen_mrc_tests(seed, corpus, resources, MrcGenConfig(rng_seed=42))
        second = gen_mrc_tests(seed, corpus, resources, MrcGenConfig(rng_seed=42))
        assert first == second

    def test_unselected_regions_untouched(self, mrc_seeds, corpus, resources):
        seed = mrc_seeds["q-village"]
        cfg = MrcGenConfig(rng_seed=7, sentences_per_seed=4)
        for test in gen_mrc_tests(seed, corpus, resources, cfg):
            # paragraph has five sentences; at least one was not selected and
            # must appear verbatim
            untouched = [
                sid for sid in seed.sentence_ids if corpus[sid].text in test.paragraph
            ]
            assert untouched

    def test_all_original_leaves_yield_no_tests(self, corpus, resources):
        # pb0's only adjunct has no eligible words, so reconstruction is a no-op
        text = corpus["pb0"].text
        seed = MrcSeed(
            id="noop",
            sentence_ids=["pb0"],
            context=text,
            question="Who?",
            gold_answers=[corpus["pb0"].tokens[4].form],
            answer_sentence_id="pb0",
            answer_span=(0, 3),
        )
        assert gen_mrc_tests(seed, corpus, resources, MrcGenConfig()) == []

    def test_answer_overlap_suppression(self, corpus, resources):
        sent = corpus["pc0"]
        text = sent.text
        adv = sent.tokens[3].form  # the adverb adjunct
        start = text.index(adv)
        suppressed = MrcSeed(
            id="ans-overlap",
            sentence_ids=["pc0"],
            context=text,
            question="Who is mentioned?",
            gold_answers=[adv],
            answer_sentence_id="pc0",
            answer_span=(start, start + len(adv)),
        )
        assert gen_mrc_tests(suppressed, corpus, resources, MrcGenConfig()) == []

        noun = sent.tokens[1].form
        n_start = text.index(noun)
        allowed = MrcSeed(
            id="ans-clear",
            sentence_ids=["pc0"],
            context=text,
            question="Who is mentioned?",
            gold_answers=[noun],
            answer_sentence_id="pc0",
            answer_span=(n_start, n_start + len(noun)),
        )
        assert gen_mrc_tests(allowed, corpus, resources, MrcGenConfig())

    def test_question_word_suppression(self, corpus, resources):
        sent = corpus["pc0"]
        text = sent.text
        adv = sent.tokens[3].form
        noun = sent.tokens[1].form
        n_start = text.index(noun)
        seed = MrcSeed(
            id="q-word",
            sentence_ids=["pc0"],
            context=text,
            question=f"Did it happen {adv}?",
            gold_answers=[noun],
            answer_sentence_id="pc0",
            answer_span=(n_start, n_start + len(noun)),
        )
        assert gen_mrc_tests(seed, corpus, resources, MrcGenConfig()) == []


class TestSuiteIo:
    def test_round_trip(self, chain_tree, tmp_path):
        tests = gen_ssm_tests(chain_tree)
        path = tmp_path / "suite.jsonl"
        assert write_suite(path, tests) == len(tests)
        assert read_suite(path) == tests

    def test_records_validate(self, chain_tree, mrc_seeds, corpus, resources):
        suites = {
            "sa": gen_sa_tests(chain_tree),
            "ssm": gen_ssm_tests(chain_tree),
            "mrc": gen_mrc_tests(mrc_seeds["q-instance"], corpus, resources, MrcGenConfig()),
        }
        for task, tests in suites.items():
            for test in tests:
                validate(to_suite_record(test), TEST_RECORD_FOR_TASK[task])

    def test_sa_round_trip(self, chain_tree, tmp_path):
        tests = gen_sa_tests(chain_tree)
        path = tmp_path / "sa.jsonl"
        write_suite(path, tests)
        assert read_suite(path) == tests
