import itertools

import pytest
from hypothesis import given, settings, strategies as st

from sentasm.assembly import (
    assemble_step,
    beam_prune,
    build_derivation_tree,
    make_root,
    minimal_variation_leaves,
    original_only_mutator,
    tree_paths,
    tree_records,
)
from sentasm.disassembly import disassemble
from sentasm.ingest import Token
from sentasm.mutation import original_variant
from sentasm.schemas import TREE_NODE_RECORD, validate

from oracles import deletion_derivable, enumerate_levels, enumerate_paths
from treekit import scripted_mutator, synthetic_template

WORKED_CHAIN = [
    "Downtown Jacksonville was ravaged by a fire.",
    "On May 3, downtown Jacksonville was ravaged by a fire.",
    "On May 3, downtown Jacksonville was ravaged by a fire that started as a kitchen fire.",
]


class TestAssembleStep:
    def test_single_parent_single_variant(self, corpus):
        template = disassemble(corpus["fire1"])
        root = make_root(template)
        variants = {root.id: [original_variant(template.slots[0])]}
        children = assemble_step(template, [root], 1, variants)
        assert len(children) == 1
        assert children[0].text == WORKED_CHAIN[1]
        assert children[0].level == 1

    def test_cartesian_count(self):
        template = synthetic_template(1)
        root = make_root(template)
        mut = scripted_mutator([3])
        parents = assemble_step(template, [root], 1, {root.id: mut(template.slots[0], root)})
        assert len(parents) == 3
        template2 = synthetic_template(2)
        root2 = make_root(template2)
        mut2 = scripted_mutator([2, 3])
        level1 = assemble_step(
            template2, [root2], 1, {root2.id: mut2(template2.slots[0], root2)}
        )
        variants_for = {p.id: mut2(template2.slots[1], p) for p in level1}
        level2 = assemble_step(template2, level1, 2, variants_for)
        assert len(level2) == 2 * 3

    def test_sentence_initial_insertion_restores_case(self, corpus):
        # the former first word returns to its seed-internal lowercase form
        template = disassemble(corpus["fire1"])
        root = make_root(template)
        assert root.text.startswith("Downtown")
        children = assemble_step(
            template, [root], 1, {root.id: [original_variant(template.slots[0])]}
        )
        assert "On May 3, downtown" in children[0].text

    def test_wrong_slot_rejected(self):
        template = synthetic_template(2)
        root = make_root(template)
        bad = original_variant(template.slots[1])
        with pytest.raises(ValueError, match="slot"):
            assemble_step(template, [root], 1, {root.id: [bad]})


class TestBeamPrune:
    def test_sort_oracle(self):
        template = synthetic_template(1)
        root = make_root(template)
        mut = scripted_mutator([9])
        level = assemble_step(template, [root], 1, {root.id: mut(template.slots[0], root)})
        pruned = beam_prune(level, 4)
        expected = sorted(level, key=lambda n: -n.path_score)[:4]
        assert [n.path_score for n in pruned] == [n.path_score for n in expected]
        assert len(pruned) == 4

    def test_smaller_than_beam_unchanged(self):
        template = synthetic_template(1)
        root = make_root(template)
        level = assemble_step(
            template, [root], 1, {root.id: scripted_mutator([2])(template.slots[0], root)}
        )
        assert beam_prune(level, 10) == sorted(
            level, key=lambda n: (-n.path_score, -n.last_similarity, n.text)
        )

    def test_all_original_ties_retained(self):
        template = synthetic_template(1)
        nodes = []
        for i in range(3):
            root = make_root(template)
            child = assemble_step(
                template, [root], 1, {root.id: [original_variant(template.slots[0])]}
            )[0]
            nodes.append(child)
        assert len(beam_prune(nodes, 4)) == 3

    def test_beam_must_be_positive(self):
        with pytest.raises(ValueError):
            beam_prune([], 0)

    def test_tie_break_is_lexicographic(self):
        template = synthetic_template(1)
        root = make_root(template)
        # all variants share similarity, so ranking falls through to text
        mut = scripted_mutator([4], sims=[[0.5, 0.5, 0.5]])
        level = assemble_step(template, [root], 1, {root.id: mut(template.slots[0], root)})
        tied = [n for n in level if n.path_score == 0.5]
        pruned = beam_prune(tied, 2)
        assert [n.text for n in pruned] == sorted(n.text for n in tied)[:2]


class TestBuildTree:
    def test_worked_example_chain(self, corpus):
        template = disassemble(corpus["fire1"])
        tree = build_derivation_tree(template, original_only_mutator())
        assert [level[0].text for level in tree.levels] == WORKED_CHAIN
        assert tree.node_count() == 3

    def test_zero_slot_template(self, corpus):
        template = disassemble(corpus["pj0"])
        tree = build_derivation_tree(template, original_only_mutator())
        assert tree.node_count() == 1
        assert tree.root.text == corpus["pj0"].text

    def test_two_by_two_enumeration(self):
        template = synthetic_template(2)
        tree = build_derivation_tree(template, scripted_mutator([2, 2]))
        assert [len(level) for level in tree.levels] == [1, 2, 4]
        assert tree.node_count() == 7
        variants_per_slot = [
            [v.forms for v in scripted_mutator([2, 2])(slot, tree.root)]
            for slot in template.slots
        ]
        oracle = enumerate_levels(template, variants_per_slot)
        for level, expected in zip(tree.levels, oracle):
            assert sorted(n.text for n in level) == sorted(expected)

    def test_beam_bounds_levels(self):
        template = synthetic_template(3)
        tree = build_derivation_tree(template, scripted_mutator([3, 3, 3]), beam_size=4)
        assert [len(level) for level in tree.levels] == [1, 3, 4, 4]

    def test_all_original_leaf_reproduces_seed(self, corpus):
        for sid in ("fire1", "pa0", "pl0", "pm0", "pg0"):
            template = disassemble(corpus[sid])
            tree = build_derivation_tree(template, original_only_mutator())
            assert tree.levels[-1][0].text == corpus[sid].text

    def test_token_count_law(self):
        template = synthetic_template(2)
        tree = build_derivation_tree(template, scripted_mutator([2, 2]))
        base_len = len(template.base_tokens)
        for level_idx, level in enumerate(tree.levels):
            for node in level:
                expected = base_len + sum(len(v.tokens) for v in node.filled)
                assert len(node.text.split(" ")) == expected


class TestPathsAndLeaves:
    def test_chain_single_path(self, corpus):
        template = disassemble(corpus["fire1"])
        tree = build_derivation_tree(template, original_only_mutator())
        paths = tree_paths(tree)
        assert len(paths) == 1
        assert [n.level for n in paths[0]] == [0, 1, 2]

    def test_path_count_matches_product(self):
        template = synthetic_template(2)
        tree = build_derivation_tree(template, scripted_mutator([2, 2]))
        assert len(tree_paths(tree)) == enumerate_paths([[None] * 2, [None] * 2]) == 4
        for path in tree_paths(tree):
            assert [n.level for n in path] == [0, 1, 2]

    def test_minimal_variation_ranking(self):
        template = synthetic_template(1)
        tree = build_derivation_tree(template, scripted_mutator([2], sims=[[0.8]]))
        leaves = minimal_variation_leaves(tree)
        assert [n.path_score for n in leaves] == [1.0, 0.8]

    def test_top_k(self):
        template = synthetic_template(1)
        tree = build_derivation_tree(template, scripted_mutator([9]))
        assert len(minimal_variation_leaves(tree, 4)) == 4

    def test_zero_slot_returns_root(self, corpus):
        template = disassemble(corpus["pj1"])
        tree = build_derivation_tree(template, original_only_mutator())
        assert minimal_variation_leaves(tree) == [tree.root]

    def test_derivation_relation_on_paths(self):
        template = synthetic_template(3)
        tree = build_derivation_tree(template, scripted_mutator([2, 1, 2]))
        for path in tree_paths(tree):
            for i, j in itertools.combinations(range(len(path)), 2):
                assert deletion_derivable(template, path[i], path[j])


class TestDump:
    def test_records_validate(self, corpus):
        template = disassemble(corpus["fire1"])
        tree = build_derivation_tree(template, original_only_mutator())
        records = list(tree_records(tree))
        assert len(records) == 3
        for rec in records:
            validate(rec, TREE_NODE_RECORD)


class TestCardinalityLaw:
    @settings(max_examples=60, deadline=None)
    @given(
        counts=st.lists(st.integers(min_value=1, max_value=4), min_size=0, max_size=3),
        beam=st.one_of(st.none(), st.integers(min_value=1, max_value=4)),
    )
    def test_level_sizes(self, counts, beam):
        template = synthetic_template(len(counts))
        tree = build_derivation_tree(template, scripted_mutator(counts), beam_size=beam)
        expected = 1
        for i, count in enumerate(counts, start=1):
            expected = expected * count
            if beam is not None:
                expected = min(beam, expected)
            assert len(tree.levels[i]) == expected
        assert tree.node_count() == sum(len(level) for level in tree.levels)
