"""Read-only HTTP service over built projects.

Serves manifests (optionally through the min_score filter view), generated
image assets, and media files with byte-range support, plus the static web UI
when a build of it is present. Manifests are reloaded lazily: file mtime is
polled at most every two seconds, so edits show up without a restart.
"""

from __future__ import annotations

import json
import logging
import mimetypes
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse, RedirectResponse
from fastapi.staticfiles import StaticFiles

from .manifest import MANIFEST_NAME, filter_view, load_manifest

POLL_INTERVAL = 2.0
log = logging.getLogger("speechvis.service")


@dataclass
class LoadedProject:
    project_id: str
    path: Path
    manifest: dict
    digest: str
    mtime: float
    checked_at: float


class ProjectRegistry:
    """Lazy manifest loader for every project directory under the root."""

    def __init__(self, root: Path, poll_interval: float = POLL_INTERVAL):
        self.root = Path(root)
        self.poll_interval = poll_interval
        self._lock = threading.Lock()
        self._cache: dict[str, LoadedProject] = {}

    def list_ids(self) -> list[str]:
        if not self.root.is_dir():
            return []
        return sorted(
            p.name for p in self.root.iterdir()
            if p.is_dir() and (p / MANIFEST_NAME).is_file()
        )

    def get(self, project_id: str) -> LoadedProject:
        if "/" in project_id or project_id in ("", ".", ".."):
            raise KeyError(project_id)
        path = self.root / project_id
        manifest_path = path / MANIFEST_NAME
        now = time.monotonic()
        with self._lock:
            cached = self._cache.get(project_id)
            if cached is not None and now - cached.checked_at < self.poll_interval:
                return cached
            if not manifest_path.is_file():
                self._cache.pop(project_id, None)
                raise KeyError(project_id)
            mtime = manifest_path.stat().st_mtime
            if cached is not None and cached.mtime == mtime:
                cached.checked_at = now
                return cached
            manifest = load_manifest(manifest_path)
            loaded = LoadedProject(
                project_id=project_id,
                path=path,
                manifest=manifest,
                digest=str(manifest.get("generation", {}).get("config_digest", "")),
                mtime=mtime,
                checked_at=now,
            )
            self._cache[project_id] = loaded
            return loaded


def _safe_child(base: Path, rel: str) -> Path:
    """Resolve rel under base, refusing anything that escapes it."""
    candidate = (base / rel).resolve()
    base = base.resolve()
    if base != candidate and base not in candidate.parents:
        raise HTTPException(status_code=404, detail="not found")
    return candidate


def _range_response(path: Path, range_header: str | None) -> Response:
    size = path.stat().st_size
    media_type = mimetypes.guess_type(path.name)[0] or "application/octet-stream"
    if not range_header:
        return FileResponse(path, media_type=media_type,
                            headers={"Accept-Ranges": "bytes"})
    unit, _, spec = range_header.partition("=")
    first = spec.split(",")[0].strip()
    start_s, dash, end_s = first.partition("-")
    if unit.strip() != "bytes" or not dash:
        raise HTTPException(status_code=416, detail="malformed Range header")
    try:
        if start_s == "":  # suffix form: last N bytes
            length = int(end_s)
            start = max(0, size - length)
            end = size - 1
        else:
            start = int(start_s)
            end = int(end_s) if end_s else size - 1
    except ValueError as exc:
        raise HTTPException(status_code=416, detail="malformed Range header") from exc
    if start >= size or end < start:
        return Response(status_code=416,
                        headers={"Content-Range": f"bytes */{size}"})
    end = min(end, size - 1)
    with open(path, "rb") as fh:
        fh.seek(start)
        chunk = fh.read(end - start + 1)
    return Response(
        content=chunk,
        status_code=206,
        media_type=media_type,
        headers={
            "Content-Range": f"bytes {start}-{end}/{size}",
            "Accept-Ranges": "bytes",
            "Content-Length": str(len(chunk)),
        },
    )


def create_app(root: Path, ui_dir: Path | None = None,
               allow_origins: list[str] | None = None,
               poll_interval: float = POLL_INTERVAL) -> FastAPI:
    registry = ProjectRegistry(Path(root), poll_interval)
    app = FastAPI(title="speechvis", docs_url=None, redoc_url=None)
    app.state.registry = registry

    if allow_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(allow_origins),
            allow_methods=["GET", "HEAD"],
            allow_headers=["*"],
        )

    @app.middleware("http")
    async def read_only_and_log(request: Request, call_next):
        t0 = time.monotonic()
        if request.method not in ("GET", "HEAD", "OPTIONS"):
            response = JSONResponse({"detail": "read-only service"}, status_code=405)
        else:
            response = await call_next(request)
        log.info(json.dumps({
            "method": request.method,
            "path": request.url.path,
            "status": response.status_code,
            "ms": round((time.monotonic() - t0) * 1000, 1),
        }, sort_keys=True))
        return response

    def _project(project_id: str) -> LoadedProject:
        try:
            return registry.get(project_id)
        except KeyError:
            raise HTTPException(status_code=404,
                                detail=f"unknown project {project_id!r}") from None

    @app.get("/api/projects")
    def projects() -> list[dict]:
        out = []
        for pid in registry.list_ids():
            try:
                loaded = _project(pid)
            except HTTPException:
                continue
            m = loaded.manifest
            out.append({
                "id": pid,
                "segments": len(m["segments"]),
                "duration": m["duration"],
                "threshold": m["threshold"],
            })
        return out

    def _etag(loaded: LoadedProject, min_score: int | None) -> str:
        return f'"{loaded.digest}:{min_score if min_score is not None else 0}"'

    @app.get("/api/projects/{project_id}/manifest")
    def manifest(project_id: str, request: Request,
                 min_score: int | None = Query(default=None, ge=1, le=10)):
        loaded = _project(project_id)
        etag = _etag(loaded, min_score)
        if request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        data = loaded.manifest
        if min_score is not None:
            data = filter_view(data, min_score)
        return JSONResponse(data, headers={"ETag": etag})

    @app.get("/api/projects/{project_id}/segments")
    def segments(project_id: str, request: Request,
                 min_score: int | None = Query(default=None, ge=1, le=10)):
        loaded = _project(project_id)
        etag = _etag(loaded, min_score)
        if request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        data = loaded.manifest
        if min_score is not None:
            data = filter_view(data, min_score)
        return JSONResponse(
            {
                "project_id": project_id,
                "min_score": min_score,
                "segments": data["segments"],
            },
            headers={"ETag": etag},
        )

    @app.get("/assets/{project_id}/{rel_path:path}")
    def assets(project_id: str, rel_path: str):
        loaded = _project(project_id)
        target = _safe_child(loaded.path / "assets", rel_path)
        if not target.is_file():
            raise HTTPException(status_code=404,
                                detail=f"no asset {rel_path!r} in {project_id!r}")
        return FileResponse(target)

    @app.get("/media/{project_id}/{rel_path:path}")
    def media(project_id: str, rel_path: str, request: Request):
        loaded = _project(project_id)
        base = loaded.path / "media"
        if not base.is_dir():
            base = loaded.path / "frames"
        target = _safe_child(base, rel_path)
        if not target.is_file():
            raise HTTPException(status_code=404,
                                detail=f"no media {rel_path!r} in {project_id!r}")
        return _range_response(target, request.headers.get("range"))

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

        @app.get("/")
        def index() -> RedirectResponse:
            return RedirectResponse(url="/ui/")
    else:

        @app.get("/")
        def index() -> dict:
            return {
                "service": "speechvis",
                "projects_url": "/api/projects",
                "ui": None,
            }

    return app


def run(root: Path, port: int = 8008, bind: str = "127.0.0.1",
        ui_dir: Path | None = None, allow_origins: list[str] | None = None) -> None:
    import uvicorn

    logging.basicConfig(level=logging.INFO, format="%(message)s")
    app = create_app(root, ui_dir=ui_dir, allow_origins=allow_origins)
    uvicorn.run(app, host=bind, port=port, log_level="warning")
