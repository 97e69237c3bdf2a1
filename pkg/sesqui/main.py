from fastapi import FastAPI, Request, status
from fastapi.responses import JSONResponse
import time
import logging

from .core.config import settings
from .core.errors import AttackFailure, BudgetExceededError, SesquiError
from .core.log import setup_logging
from .routes import pairings

setup_logging()
logger = logging.getLogger("sesqui")

# Création de l'application FastAPI
app = FastAPI(
    title=settings.APP_NAME,
    description="""
    API pour les appariements de Tate sesquilinéaires sur courbes orientées.

    Cette API permet :
    - La vérification des exemples publiés (F_541, F_{101^2}, p = 4·3^r - 1)
    - La génération d'instances d'isogénies orientées à vérité scellée
    - L'exécution des attaques (norme, SIDH1, SIDH diagonal, cas ramifié, deux orientations)
    - L'évaluation ponctuelle des appariements
    """,
    version="0.1.0",
    debug=settings.DEBUG,
    docs_url="/docs",
    redoc_url="/redoc",
)


# Middleware pour le temps de réponse
@app.middleware("http")
async def add_process_time_header(request: Request, call_next):
    start_time = time.time()
    response = await call_next(request)
    process_time = time.time() - start_time
    response.headers["X-Process-Time"] = str(process_time)

    # Log les requêtes lentes (plus de 1 seconde)
    if process_time > 1.0:
        logger.warning(f"Requête lente ({process_time:.2f}s): {request.method} {request.url.path}")

    return response


# Erreurs du domaine : 422 entrée mal formée, 413 budget dépassé, 409 échec d'attaque
@app.exception_handler(SesquiError)
async def sesqui_exception_handler(request: Request, exc: SesquiError):
    if isinstance(exc, BudgetExceededError):
        status_code = status.HTTP_413_REQUEST_ENTITY_TOO_LARGE
    elif isinstance(exc, AttackFailure):
        status_code = status.HTTP_409_CONFLICT
    else:
        status_code = status.HTTP_422_UNPROCESSABLE_ENTITY
    logger.error(f"{exc.code}: {exc.message}")
    return JSONResponse(status_code=status_code, content={"code": exc.code, "detail": exc.message})


@app.get("/health", tags=["Statut"])
async def health_check():
    """
    Vérifie l'état de santé de l'API.
    """
    return {"status": "healthy", "timestamp": time.time()}


# Intégration des routes
app.include_router(pairings.router, prefix=settings.API_PREFIX)
