"""
ArtifactWriter — abstract base for file artifacts (CSV tables, SVG charts).

A writer renders its whole payload to text before touching the filesystem, so
a failed render never leaves a partial file behind.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from pathlib import Path

from ..errors import ArtifactIOError


class ArtifactWriter(ABC):

    @abstractmethod
    def render(self) -> str:
        """Full artifact text. Identical inputs must render identical text."""
        ...

    def write(self, path: Path | str) -> Path:
        """Render and write to path, creating parent directories."""
        path = Path(path)
        text = self.render()
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        except OSError as e:
            raise ArtifactIOError(f"cannot write {path}: {e.strerror or e}", path=path) from e
        return path
