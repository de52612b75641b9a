"""Metamorphic test generation for NLP models.

Seed sentences are disassembled into a basic structure plus removable
adjuncts, mutated adjuncts are reassembled into derivation trees of
grammatical variants, and the derivation relations between tree nodes supply
metamorphic oracles for reading-comprehension, sentiment, and similarity
models.
"""

__version__ = "0.1.0"
