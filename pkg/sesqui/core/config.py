from pydantic_settings import BaseSettings
from functools import lru_cache
import os
from typing import Optional
from dotenv import load_dotenv

# Charger les variables d'environnement depuis le fichier .env
load_dotenv()


class Settings(BaseSettings):
    # Paramètres de l'application
    APP_NAME: str = "Sesqui Pairings API"
    API_PREFIX: str = "/api"
    DEBUG: bool = os.getenv("DEBUG", "False").lower() == "true"

    # Configuration du logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Logarithmes discrets : plus grand facteur premier accepté
    DLOG_SMOOTHNESS_BOUND: int = int(os.getenv("DLOG_SMOOTHNESS_BOUND", str(2**20)))
    # En dessous de ce nombre de points, E[m] est tabulé pour les logarithmes 2D
    DLOG_TABLE_LIMIT: int = int(os.getenv("DLOG_TABLE_LIMIT", "4096"))

    # Nombre de points auxiliaires essayés par calcul d'appariement
    AUX_RETRY_BUDGET: int = int(os.getenv("AUX_RETRY_BUDGET", "32"))

    # Comptage de points par force brute au-delà duquel #E(F) doit être fourni
    POINT_COUNT_BUDGET: int = int(os.getenv("POINT_COUNT_BUDGET", str(2**24)))

    # Énumérations sur O/mO, (Z/m)^2, etc.
    ENUMERATION_BUDGET: int = int(os.getenv("ENUMERATION_BUDGET", str(10**6)))

    # Oracle d'isogénies par force brute
    ORACLE_MAX_DEGREE: int = int(os.getenv("ORACLE_MAX_DEGREE", "64"))
    ORACLE_MAX_PRIME: int = int(os.getenv("ORACLE_MAX_PRIME", "13"))

    # Recherche de bases de torsion et de générateurs de module
    TORSION_RETRY_BUDGET: int = int(os.getenv("TORSION_RETRY_BUDGET", "64"))
    GENERATOR_SEARCH_BUDGET: int = int(os.getenv("GENERATOR_SEARCH_BUDGET", "64"))

    # Tours du vote majoritaire pour la récupération d'orientation
    MAJORITY_ROUNDS: int = int(os.getenv("MAJORITY_ROUNDS", "15"))

    # Surcharge globale des budgets (variable documentée pour la CLI)
    SESQUI_BUDGET: Optional[int] = int(os.environ["SESQUI_BUDGET"]) if os.getenv("SESQUI_BUDGET") else None

    @property
    def oracle_degree_budget(self) -> int:
        return self.SESQUI_BUDGET if self.SESQUI_BUDGET is not None else self.ORACLE_MAX_DEGREE

    @property
    def enumeration_budget(self) -> int:
        if self.SESQUI_BUDGET is not None:
            return max(self.SESQUI_BUDGET, self.ENUMERATION_BUDGET)
        return self.ENUMERATION_BUDGET

    # Autoriser des champs supplémentaires
    class Config:
        extra = "ignore"
        env_file = ".env"
        case_sensitive = True


@lru_cache()
def get_settings():
    return Settings()


settings = get_settings()
