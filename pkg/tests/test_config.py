import pytest
from pydantic import ValidationError

from src.config import Settings, configure, get_settings


class TestSettings:

    def test_env_file(self, tmp_path, monkeypatch):
        for name in ("WHYLOG_MAX_PROFILES", "WHYLOG_OP_LOGGING"):
            monkeypatch.setenv(name, "unset")
            monkeypatch.delenv(name)
        env_file = tmp_path / ".env"
        env_file.write_text("WHYLOG_MAX_PROFILES=77\nWHYLOG_OP_LOGGING=yes\n", encoding="utf-8")
        settings = Settings.from_env(str(env_file))
        assert settings.max_profiles == 77
        assert settings.op_logging

    def test_environment_wins_over_env_file(self, tmp_path, monkeypatch):
        monkeypatch.setenv("WHYLOG_MAX_PROFILES", "12")
        env_file = tmp_path / ".env"
        env_file.write_text("WHYLOG_MAX_PROFILES=77\n", encoding="utf-8")
        assert Settings.from_env(str(env_file)).max_profiles == 12

    def test_configure_keeps_other_fields(self):
        before = get_settings()
        after = configure(max_profiles=9)
        assert after.max_profiles == 9
        assert after.max_oracle_terms == before.max_oracle_terms
        assert get_settings() is after

    def test_caps_are_positive(self):
        with pytest.raises(ValidationError):
            configure(max_profiles=0)
