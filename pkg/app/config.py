from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

# Standard-Schranken für Koeffizienten und Nerv-Dimension
DEFAULT_CAP = 8
DEFAULT_NERVE_DIMENSION = 4


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        case_sensitive=False,
        extra="ignore",
    )

    # Aufzählung – maximale Koeffizientengröße positiver Ketten
    cap: int = Field(default=DEFAULT_CAP, ge=1)

    # Nerv – Dimensionsschranke D
    nerve_dimension: int = Field(default=DEFAULT_NERVE_DIMENSION, ge=0)

    # Ausgabe
    output_format: Literal["json", "dot"] = "json"
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"

    # Fuzzing im Abnahme-Lauf
    seed: int = 0

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # Nur Init-Argumente (= CLI-Flags), keine Umgebungsvariablen und keine .env
        return (init_settings,)


settings = Settings()
