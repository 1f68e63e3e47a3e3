import pytest
from hypothesis import given, settings, strategies as st

from rankfreq.exceptions import ConfigError, TextDecodeError
from rankfreq.tokenizer import (UKRAINIAN_EUPHONY_GROUPS, UKRAINIAN_LETTERS, CleanConfig,
                                CleanReport, TextCleaner, apply_variant_merge, load_config,
                                tokenize)


def test_lowercase_and_trailing_punctuation():
    tokens, rep = tokenize("Брати брати.")
    assert tokens == ["брати", "брати"]
    assert rep == CleanReport(tokens_kept=2)


def test_every_removal_class():
    tokens, rep = tokenize("МіГ-29 і 5 літаків — це багато")
    assert tokens == ["і", "літаків", "це", "багато"]
    assert rep.removed_number_words == 1
    assert rep.removed_numbers == 1
    assert rep.dashes_removed == 1
    assert rep.removed_foreign_script == 0
    assert rep.removed_punctuation_only == 0
    assert rep.tokens_kept == 4


def test_foreign_script():
    tokens, rep = tokenize("computer і мережа")
    assert tokens == ["і", "мережа"]
    assert rep.removed_foreign_script == 1


@pytest.mark.parametrize("text, expected", [
    ("м'ята", ["м'ята"]),
    ("м’ята", ["м'ята"]),
    ("мʼята", ["м'ята"]),
    ("'цитата'", ["цитата"]),
    ("будь-що", ["будь-що"]),
    ("-так-", ["так"]),
    ("хто-небудь, щось", ["хто-небудь", "щось"]),
])
def test_apostrophe_and_hyphen(text, expected):
    assert tokenize(text)[0] == expected


def test_hyphen_split_when_disabled():
    cfg = CleanConfig(keep_internal_hyphen=False)
    assert tokenize("будь-що", cfg)[0] == ["будь", "що"]
    # a hyphen next to a digit still binds, so the number-word is dropped whole
    tokens, rep = tokenize("МіГ-29", cfg)
    assert tokens == [] and rep.removed_number_words == 1


def test_apostrophe_dropped_when_disabled():
    assert tokenize("м'ята", CleanConfig(keep_apostrophe=False))[0] == ["мята"]


@pytest.mark.parametrize("text, field", [
    ("12,5", "removed_numbers"),
    ("1945–1970", "removed_numbers"),
    ("(1994)", "removed_numbers"),
    ("5-й", "removed_number_words"),
    ("abc", "removed_foreign_script"),
    ("ёлка", "removed_foreign_script"),
    ("...", "removed_punctuation_only"),
    ("«»", "removed_punctuation_only"),
    ("—", "dashes_removed"),
    ("–", "dashes_removed"),
    ("-", "dashes_removed"),
    ("--", "dashes_removed"),
])
def test_removal_class(text, field):
    tokens, rep = tokenize(text)
    assert tokens == []
    assert getattr(rep, field) == 1
    assert rep.items_examined == 1


def test_script_filters():
    text = "ёлка ніч word"
    assert tokenize(text, CleanConfig(script_filter="cyrillic"))[0] == ["ёлка", "ніч"]
    assert tokenize(text, CleanConfig(script_filter="none"))[0] == ["ёлка", "ніч", "word"]


def test_case_kept_when_lowercase_off():
    assert tokenize("Київ", CleanConfig(lowercase=False))[0] == ["Київ"]


def test_stress_marks_removed():
    assert tokenize("бра́ти")[0] == ["брати"]


def test_invalid_utf8_reports_offset():
    with pytest.raises(TextDecodeError) as info:
        tokenize("слово ".encode() + b"\xff\xfe")
    assert info.value.offset == len("слово ".encode())


def test_bytes_input():
    assert tokenize("ніж і ніж".encode())[0] == ["ніж", "і", "ніж"]


def test_variant_merge_examples():
    cfg = CleanConfig(variant_merge_groups=UKRAINIAN_EUPHONY_GROUPS)
    assert apply_variant_merge(["й", "та", "і"], cfg) == ["і", "і", "і"]
    assert apply_variant_merge(["у", "в", "уві"], cfg) == ["в", "в", "в"]
    assert apply_variant_merge(["у", "в"], CleanConfig()) == ["у", "в"]


def test_canonical_is_member_of_group():
    cfg = CleanConfig(variant_merge_groups=(("в", frozenset({"у"})),))
    assert dict(cfg.variant_merge_groups)["в"] == {"в", "у"}


def test_overlapping_groups_rejected():
    with pytest.raises(ConfigError):
        CleanConfig(variant_merge_groups=(("і", frozenset({"й"})), ("й", frozenset({"та"}))))
    with pytest.raises(ConfigError):
        apply_variant_merge(["а"], [("і", {"та"}), ("в", {"та"})])


def test_bad_script_filter():
    with pytest.raises(ConfigError):
        CleanConfig(script_filter="latin")


def test_config_file_roundtrip(tmp_path, monkeypatch):
    cfg = CleanConfig(lowercase=False, variant_merge_groups=UKRAINIAN_EUPHONY_GROUPS)
    path = tmp_path / "cfg.json"
    import json
    path.write_text(json.dumps(cfg.to_dict(), ensure_ascii=False), encoding="utf-8")
    assert load_config(path) == cfg
    monkeypatch.setenv("RANKFREQ_CONFIG", str(path))
    assert load_config() == cfg
    monkeypatch.delenv("RANKFREQ_CONFIG")
    assert load_config() == CleanConfig()


def test_unknown_config_key(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text('{"lowercase": true, "stemming": true}')
    with pytest.raises(ConfigError):
        load_config(path)


def test_report_merge_is_order_independent():
    a = tokenize("1 2 abc слово")[1]
    b = tokenize("— ... МіГ-29")[1]
    c = tokenize("ще")[1]
    assert (a + b) + c == c + (b + a)


def test_text_cleaner_transformer():
    cleaner = TextCleaner(variant_merge_groups=UKRAINIAN_EUPHONY_GROUPS)
    out = cleaner.fit_transform(["Ми й ви", "5 — у місті"])
    assert out == [["ми", "і", "ви"], ["в", "місті"]]
    assert cleaner.report_.removed_numbers == 1
    assert cleaner.report_.dashes_removed == 1
    assert cleaner.get_params()["script_filter"] == "ukrainian-cyrillic"


text_strategy = st.text(
    alphabet=st.one_of(
        st.characters(),
        st.sampled_from(sorted(UKRAINIAN_LETTERS) + list(" '’-—–.,0123456789")),
    ),
    max_size=80,
)


@settings(max_examples=300, deadline=None)
@given(text_strategy, st.sampled_from(["ukrainian-cyrillic", "cyrillic", "none"]),
       st.booleans(), st.booleans())
def test_token_invariants(text, script, hyphen, apostrophe):
    import unicodedata
    cfg = CleanConfig(script_filter=script, keep_internal_hyphen=hyphen,
                      keep_apostrophe=apostrophe)
    tokens, rep = tokenize(text, cfg)
    assert rep.tokens_kept == len(tokens)
    assert rep.items_examined >= len(text.split())
    for tok in tokens:
        assert tok and not any(ch.isspace() for ch in tok)
        assert not any(unicodedata.category(ch).startswith("N") for ch in tok)
        assert any(unicodedata.category(ch).startswith("L") for ch in tok)
        if script == "ukrainian-cyrillic":
            assert all(ch in UKRAINIAN_LETTERS or ch in "'-" for ch in tok)
    assert tokenize(text, cfg) == (tokens, rep)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from(["і", "й", "та", "в", "у", "вві", "уві", "ми", "ви"]),
                max_size=30))
def test_variant_merge_idempotent(tokens):
    cfg = CleanConfig(variant_merge_groups=UKRAINIAN_EUPHONY_GROUPS)
    once = apply_variant_merge(tokens, cfg)
    assert apply_variant_merge(once, cfg) == once
    assert len(once) == len(tokens)
