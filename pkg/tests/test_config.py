import pytest
import yaml

from app.core.config_manager import DEFAULT_CONFIG, ConfigManager, get_config, reset_config

ENV_VARS = ('FANSHEAF_MAX_DIM', 'FANSHEAF_LOG_LEVEL', 'FANSHEAF_CORPUS_SEED', 'FANSHEAF_CONFIG_DIR')


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ENV_VARS:
        monkeypatch.delenv(name, raising=False)
    reset_config()
    yield
    reset_config()


def test_defaults(tmp_path):
    config = ConfigManager(config_dir=tmp_path)
    assert config.get('limits', 'max_dim_a') == DEFAULT_CONFIG['limits']['max_dim_a']
    assert config.dimension_limit('C') == 4
    assert config.dimension_limit('ehrhart') == config.dimension_limit('A') == 6
    assert config.get('missing', 'key', default='x') == 'x'


def test_user_file_is_merged(tmp_path):
    user = tmp_path / 'user'
    user.mkdir()
    (user / 'config.yaml').write_text(yaml.safe_dump({'limits': {'max_dim_c': 3}, 'output': {'format': 'json'}}))
    config = ConfigManager(config_dir=tmp_path)
    assert config.dimension_limit('C') == 3
    assert config.dimension_limit('A') == 6
    assert config.get('output', 'format') == 'json'
    assert config.get('output', 'indent') == 2


def test_environment_overrides(tmp_path, monkeypatch):
    monkeypatch.setenv('FANSHEAF_MAX_DIM', '3')
    monkeypatch.setenv('FANSHEAF_LOG_LEVEL', 'DEBUG')
    monkeypatch.setenv('FANSHEAF_CORPUS_SEED', '11')
    config = ConfigManager(config_dir=tmp_path)
    assert config.dimension_limit('A') == 3
    assert config.dimension_limit('C') == 3
    assert config.get('logging', 'level') == 'DEBUG'
    assert config.get('corpus', 'seed') == 11


def test_config_dir_from_the_environment(tmp_path, monkeypatch):
    (tmp_path / 'user').mkdir()
    (tmp_path / 'user' / 'config.yaml').write_text('corpus:\n  seed: 5\n')
    monkeypatch.setenv('FANSHEAF_CONFIG_DIR', str(tmp_path))
    assert get_config().get('corpus', 'seed') == 5


def test_singleton_is_rebuilt_after_reset(monkeypatch):
    first = get_config()
    assert get_config() is first
    monkeypatch.setenv('FANSHEAF_MAX_DIM', '2')
    reset_config()
    assert get_config().dimension_limit('C') == 2


def test_save_round_trips(tmp_path):
    config = ConfigManager(config_dir=tmp_path)
    config.set('corpus', 'seed', 99)
    config.save()
    assert ConfigManager(config_dir=tmp_path).get('corpus', 'seed') == 99
