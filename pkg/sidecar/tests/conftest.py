import pytest

RAW_SENTENCES = [
    ("r1", "On May 3, downtown Jacksonville was ravaged by a fire that started as a kitchen fire."),
    ("r2", "I like that pretty girl."),
    ("r3", "The old dog chased a ball in the park."),
    ("r4", "Why did Trump purge members of his cabinet?"),
    ("r5", "It's a brave attempt."),
    ("r6", "Dogs run."),
    ("r7", "The teacher said that the student waited."),
    ("r8", "How can I delete my account?"),
    ("r9", "On Monday, the farmer visited the market."),
    ("r10", "The letter was carried by the quiet neighbor."),
]


@pytest.fixture(scope="session")
def raw_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("raw") / "sentences.tsv"
    path.write_text("".join(f"{sid}\t{text}\n" for sid, text in RAW_SENTENCES))
    return path
