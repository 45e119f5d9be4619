import pytest

from punrecover.config import bundled_config_path, load_config, load_resources
from punrecover.evaluation import load_gold
from punrecover.lexicon import Lexicon

DESK = bundled_config_path().parent
GOLD = DESK / "pun_examples.jsonl"


@pytest.fixture(scope="session")
def desk_config():
    return load_config(bundled_config_path())


@pytest.fixture(scope="session")
def desk(desk_config):
    return load_resources(desk_config)


@pytest.fixture(scope="session")
def gold():
    return load_gold(GOLD)


@pytest.fixture
def toy_lexicon():
    return Lexicon(
        english_words=frozenset({"grand", "zeal", "the", "morning", "proud", "of", "you"}),
        hindi_map={"salaam": frozenset({"सलाम"}), "zeal": frozenset({"ज़ील"}),
                   "phir": frozenset({"फिर"}), "bhi": frozenset({"भी"}),
                   "hai": frozenset({"है"}), "doodh": frozenset({"दूध"})},
        named_entities=frozenset({"amul", "delhi", "grand"}),
    )


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" not in props or (outcome == "passed" and rep.when != "call"):
                continue
            status = "PASS" if outcome == "passed" else "FAIL"
            lines.append((props["criterion"], status, props.get("detail", "")))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status, detail in sorted(set(lines)):
            terminalreporter.write_line(f"{status}  {name}" + (f"  ({detail})" if detail else ""))
