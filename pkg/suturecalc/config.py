# -*- coding: utf-8 -*-
"""
配置管理模块
使用 Pydantic Settings 管理配置，来源优先级：
初始化参数 > 环境变量(SUTURECALC_ 前缀) > .env > config.yaml > 默认值
"""

from fractions import Fraction
from pathlib import Path
from typing import Optional, Tuple, Type

from pydantic import BaseModel, Field, field_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    YamlConfigSettingsSource,
)


# 项目根目录
BASE_DIR = Path(__file__).parent.parent
CONFIG_PATH = BASE_DIR / "config.yaml"


class NovikovSettings(BaseModel):
    """Novikov 环相关配置"""
    # 截断级数的默认截断指数，可写成 "7" 或 "15/2"
    cutoff: str = "50"

    @field_validator("cutoff", mode="before")
    @classmethod
    def _check_cutoff(cls, value):
        Fraction(str(value))
        return str(value)


class FactorizationSettings(BaseModel):
    """辛矩阵分解搜索上限"""
    max_steps: int = Field(default=4000, ge=1)
    backtrack_depth: int = Field(default=2, ge=0, le=4)


class RunnerSettings(BaseModel):
    """批量检查默认参数"""
    seed: int = 0
    cases: int = Field(default=200, ge=1)
    # 1 表示在当前进程内顺序执行
    max_workers: int = Field(default=1, ge=1)


class LoggingSettings(BaseModel):
    level: str = "INFO"
    console_output: bool = True
    log_dir: Optional[str] = None
    retention_days: int = 30
    max_file_size_mb: int = 10


class Settings(BaseSettings):
    """应用配置类"""

    app_name: str = "suturecalc"
    app_version: str = "0.1.0"

    novikov: NovikovSettings = NovikovSettings()
    factorization: FactorizationSettings = FactorizationSettings()
    runner: RunnerSettings = RunnerSettings()
    logging: LoggingSettings = LoggingSettings()

    model_config = SettingsConfigDict(
        env_prefix="SUTURECALC_",
        env_nested_delimiter="__",
        env_file=".env",
        env_file_encoding="utf-8",
        yaml_file=CONFIG_PATH,
        yaml_file_encoding="utf-8",
        extra="ignore",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (
            init_settings,
            env_settings,
            dotenv_settings,
            YamlConfigSettingsSource(settings_cls),
        )

    def cutoff_fraction(self) -> Fraction:
        """默认截断指数（精确有理数）"""
        return Fraction(self.novikov.cutoff)


def get_settings() -> Settings:
    """重新读取所有配置来源"""
    return Settings()


# 全局配置实例
settings = get_settings()
