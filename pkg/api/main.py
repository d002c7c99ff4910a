from fastapi import FastAPI

from api.routes.metadata import router as metadata_router
from api.routes.optimize import router as optimize_router
from config.settings import get_settings


def create_app() -> FastAPI:
    app = FastAPI(title=get_settings().app_name)

    @app.get("/health")
    async def health() -> dict:
        return {"status": "ok"}

    app.include_router(optimize_router)
    app.include_router(metadata_router)

    return app


app = create_app()
