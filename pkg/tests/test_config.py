import pytest

from locc_ops.config import Settings, load_config
from locc_ops.errors import InputError


def test_packaged_defaults(monkeypatch):
    monkeypatch.delenv("LOCC_OPS_CONFIG", raising=False)
    assert load_config() == Settings()


def test_user_file_overrides_defaults(tmp_path):
    path = tmp_path / "locc.yaml"
    path.write_text("synthesis:\n  depth_limit: 3\noutput:\n  format: text\n")
    s = load_config(str(path))
    assert s.depth_limit == 3
    assert s.output_format == "text"
    assert s.tolerance == 1e-9


def test_flag_overrides_win_and_none_is_ignored(tmp_path):
    path = tmp_path / "locc.yaml"
    path.write_text("tolerance: 1.0e-6\n")
    s = load_config(str(path), {"tolerance": None, "generator": {"seed": 11}})
    assert s.tolerance == 1e-6
    assert s.generator_seed == 11


def test_environment_variable_names_the_file(tmp_path, monkeypatch):
    path = tmp_path / "env.yaml"
    path.write_text("logging:\n  level: debug\n")
    monkeypatch.setenv("LOCC_OPS_CONFIG", str(path))
    assert load_config().log_level == "DEBUG"


@pytest.mark.parametrize("text", [
    "tolerance: -1\n",
    "synthesis:\n  depth_limit: 0\n",
    "output:\n  format: xml\n",
    "unknown_key: 1\n",
    "synthesis: 4\n",
    "- a list\n",
    "tolerance: [\n",
])
def test_bad_config_is_an_input_error(tmp_path, text):
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    with pytest.raises(InputError):
        load_config(str(path))


def test_missing_config_file(tmp_path):
    with pytest.raises(InputError):
        load_config(str(tmp_path / "absent.yaml"))
