from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import ResourceLimitError, SpecError
from . import handlers, schemas

INPUT_ERROR_STATUS = 400
RESOURCE_ERROR_STATUS = 413


def create_app() -> FastAPI:
    app = FastAPI(title="igt", description="Intersection graphs of finite groups")

    @app.exception_handler(SpecError)
    async def spec_error(request: Request, exc: SpecError):
        body = {"kind": "input", "detail": str(exc)}
        if exc.position is not None:
            body["position"] = exc.position
            body["expected"] = exc.expected
        return JSONResponse(status_code=INPUT_ERROR_STATUS, content=body)

    @app.exception_handler(ValueError)
    async def value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=INPUT_ERROR_STATUS, content={"kind": "input", "detail": str(exc)})

    @app.exception_handler(ResourceLimitError)
    async def resource_error(request: Request, exc: ResourceLimitError):
        return JSONResponse(
            status_code=RESOURCE_ERROR_STATUS, content={"kind": "resource", "detail": str(exc)}
        )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/build", response_model=schemas.GroupResponse)
    def build(req: schemas.SpecRequest):
        return handlers.build_group(req)

    @app.post("/lattice", response_model=schemas.LatticeResponse)
    def lattice(req: schemas.SpecRequest):
        return handlers.lattice(req)

    @app.post("/graph", response_model=schemas.GraphResponse)
    def graph(req: schemas.GraphRequest):
        return handlers.graph(req)

    @app.post("/check", response_model=schemas.CheckResponse)
    def check(req: schemas.CheckRequest):
        return handlers.check(req)

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    def classify(req: schemas.SpecRequest):
        return handlers.classify(req)

    @app.post("/verify")
    def verify(req: schemas.VerifyRequest):
        return handlers.verify(req)

    @app.post("/match", response_model=schemas.MatchResponse)
    def match(req: schemas.SpecRequest):
        return handlers.match(req)

    return app


app = create_app()
