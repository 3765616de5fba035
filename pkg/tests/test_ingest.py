import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalefree.errors import DuplicateCategory, EmptyDocument, ManifestError, PathNotFound
from scalefree.ingest import (
    NormalizeOptions,
    TokenSequence,
    chunk,
    concatenate,
    load_category,
    load_manifest,
    normalize_and_tokenize,
    split_sizes,
)

KEEP_PUNCT = NormalizeOptions(strip_punctuation=False)


def write_manifest(tmp_path, categories):
    p = tmp_path / "manifest.json"
    p.write_text(json.dumps({"categories": categories}))
    return p


@pytest.fixture
def two_category_dir(tmp_path):
    for cat in ("statute", "novel"):
        d = tmp_path / cat
        d.mkdir()
        for i in range(3):
            (d / f"{i}.txt").write_text(f"{cat} text number {i}\n")
    return tmp_path


def test_manifest_two_categories(two_category_dir):
    cats = [
        {"name": "statute", "paths": [f"statute/{i}.txt" for i in range(3)], "label": "legal"},
        {"name": "novel", "paths": ["novel"], "label": "general"},
    ]
    m = load_manifest(write_manifest(two_category_dir, cats))
    assert [c.name for c in m.categories] == ["statute", "novel"]
    assert all(p.is_absolute() for c in m.categories for p in c.paths)
    assert [len(c.files()) for c in m.categories] == [3, 3]
    assert m["novel"].label == "general"


def test_manifest_duplicate_category(two_category_dir):
    cats = [{"name": "statute", "paths": ["statute"]}, {"name": "statute", "paths": ["novel"]}]
    with pytest.raises(DuplicateCategory):
        load_manifest(write_manifest(two_category_dir, cats))


def test_manifest_missing_path(tmp_path):
    with pytest.raises(PathNotFound):
        load_manifest(write_manifest(tmp_path, [{"name": "x", "paths": ["absent.txt"]}]))


def test_manifest_missing_file(tmp_path):
    with pytest.raises(PathNotFound):
        load_manifest(tmp_path / "nope.json")


@pytest.mark.parametrize("doc", ['{"categories": []}', '{"cats": []}', "not json",
                                 '{"categories": [{"name": "x", "paths": [], "label": "poetry"}]}'])
def test_manifest_malformed(tmp_path, doc):
    p = tmp_path / "m.json"
    p.write_text(doc)
    with pytest.raises(ManifestError):
        load_manifest(p)


def test_normalize_examples():
    assert normalize_and_tokenize(b"The Cat, the cat.").tokens == ("the", "cat", "the", "cat")
    assert normalize_and_tokenize(b"a  b\t\nc").tokens == ("a", "b", "c")
    assert normalize_and_tokenize(b"Hello, World", KEEP_PUNCT).tokens == ("hello,", "world")


def test_normalize_no_case_fold():
    seq = normalize_and_tokenize(b"The Cat", NormalizeOptions(case_fold=False))
    assert seq.tokens == ("The", "Cat")


def test_punctuation_is_deleted_not_split():
    assert normalize_and_tokenize("don't self-evident «quoted» ¿qué?").tokens == (
        "dont", "selfevident", "quoted", "qué")


def test_symbols_are_not_punctuation():
    # $, + and © are symbols (S*); the section sign is punctuation (Po)
    assert normalize_and_tokenize("§ 5 costs $3 + ©").tokens == ("5", "costs", "$3", "+", "©")


def test_empty_document():
    with pytest.raises(EmptyDocument):
        normalize_and_tokenize(b" ... \n !! ")


def test_invalid_utf8_counted():
    seq = normalize_and_tokenize(b"ok \xff\xfe bad \xef\xbf\xbd")
    # two invalid bytes replaced; the literal U+FFFD in the input is not counted
    assert seq.n_replaced == 2
    assert seq.tokens[0] == "ok"


def test_byte_length():
    seq = normalize_and_tokenize("Über alles.")
    assert seq.byte_length == len("über alles".encode("utf-8"))


def test_token_sequence_rejects_empty_token():
    with pytest.raises(ValueError):
        TokenSequence(("a", "", "b"))


def test_encoded_first_occurrence_order():
    ids, vocab = TokenSequence(("b", "a", "b", "c")).encoded
    assert ids.tolist() == [0, 1, 0, 2]
    assert vocab == ("b", "a", "c")


@pytest.mark.parametrize("n, target, sizes, dropped", [
    (650_000, 300_000, [300_000, 300_000], 50_000),
    (450_000, 300_000, [300_000, 150_000], 0),
    (10, 3, [3, 3, 3], 1),
    (600_000, 300_000, [300_000, 300_000], 0),
    (149_999, 300_000, [], 149_999),
])
def test_split_sizes(n, target, sizes, dropped):
    assert split_sizes(n, target) == (sizes, dropped)


def test_chunk_ten_tokens():
    seq = TokenSequence(tuple("abcdefghij"))
    chunks = chunk(seq, 3)
    assert [len(c) for c in chunks] == [3, 3, 3]
    assert [c.index for c in chunks] == [0, 1, 2]
    assert sum((c.tokens.tokens for c in chunks), ()) == tuple("abcdefghi")


def test_chunk_rejects_zero_target():
    with pytest.raises(ValueError):
        chunk(TokenSequence(("a",)), 0)


@settings(max_examples=200)
@given(n=st.integers(0, 5000), target=st.integers(1, 700))
def test_chunk_token_conservation(n, target):
    sizes, dropped = split_sizes(n, target)
    assert sum(sizes) + dropped == n
    assert all(s == target for s in sizes[:-1])
    assert dropped == 0 or dropped < 0.5 * target


words = st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=40)


@given(words)
def test_normalization_idempotent(text):
    try:
        tokens = normalize_and_tokenize(text).tokens
    except EmptyDocument:
        return
    assert normalize_and_tokenize(" ".join(tokens)).tokens == tokens


@given(words)
def test_normalization_deterministic(text):
    try:
        a = normalize_and_tokenize(text)
    except EmptyDocument:
        return
    b = normalize_and_tokenize(text)
    assert a == b


def test_category_concatenates_in_manifest_order(two_category_dir):
    cats = [{"name": "novel", "paths": ["novel/2.txt", "novel/0.txt"]}]
    m = load_manifest(write_manifest(two_category_dir, cats))
    whole = concatenate(load_category(m["novel"]))
    assert whole.tokens[:4] == ("novel", "text", "number", "2")
    assert len(whole) == 8
