from hypothesis import given, strategies as st

from conftest import CAR_BOMB
from tempus.preprocess import detokenize_check, pos_and_lemma, preprocess, split_sentences, tokenize


def test_tokenize_splits_punctuation():
    toks = tokenize("More than 10 people have died, police said.")
    assert [t.surface for t in toks] == ["More", "than", "10", "people", "have", "died", ",", "police",
                                         "said", "."]
    doc = preprocess("More than 10 people have died, police said.")
    assert [t.pos for t in doc.tokens if t.surface in ",."] == ["PUNCT", "PUNCT"]


def test_tokenize_edge_cases():
    assert tokenize("") == []
    assert [t.surface for t in tokenize("8 am")] == ["8", "am"]
    assert [t.surface for t in tokenize("at 14:30 on 02/03/1998")] == ["at", "14:30", "on", "02/03/1998"]


def test_split_sentences():
    assert len(split_sentences(tokenize(CAR_BOMB), CAR_BOMB)) == 2
    assert len(split_sentences(tokenize("no terminal punctuation here"))) == 1
    text = "Feb. 27, 1998 was cold."
    assert split_sentences(tokenize(text), text) == [(0, 8)]


def test_pos_and_lemma():
    got = {t.surface: (t.pos, t.lemma) for t in pos_and_lemma(tokenize("died signed 1998"))}
    assert got == {"died": ("VERB", "die"), "signed": ("VERB", "sign"), "1998": ("NUM", "1998")}


def test_preprocess_assigns_sentence_indices():
    doc = preprocess(CAR_BOMB, "2018-05-15", "car")
    assert doc.id == "car"
    assert [doc.tokens[a].sentence_index for a, _ in doc.sentences] == [0, 1]
    assert doc.dct.isoformat() == "2018-05-15"


@given(st.text(alphabet=st.characters(codec="utf-8", exclude_categories=("Cs",)), max_size=80))
def test_tokens_are_ordered_disjoint_substrings(text):
    tokens = tokenize(text)
    assert detokenize_check(text, tokens)
    for t in tokens:
        assert text[t.span.start:t.span.end] == t.surface
        assert t.surface.strip() == t.surface
    for prev, cur in zip(tokens, tokens[1:]):
        assert prev.span.end <= cur.span.start


@given(st.text(alphabet="ab .!?\n", max_size=60))
def test_sentences_partition_tokens(text):
    tokens = tokenize(text)
    ranges = split_sentences(tokens, text)
    flat = [i for a, b in ranges for i in range(a, b)]
    assert flat == list(range(len(tokens)))
    assert all(b > a for a, b in ranges)
