"""Module name resolution: ``/m`` -> the declarations stored in ``m.mod``."""

from __future__ import annotations

import os
from pathlib import Path

from .parser import parse_module_file
from .syntax import Import, is_ident

ENV_VAR = "MODLANG_PATH"

#: Directory holding the modules that ship with the package (mf, mp, mw, ...).
BUNDLED_DIR = Path(__file__).resolve().parent / "lib"


class RegistryError(Exception):
    pass


class ModuleNotFound(RegistryError):
    def __init__(self, module: str, searched):
        self.module = module
        self.searched = tuple(str(p) for p in searched)
        where = ", ".join(self.searched) or "<empty search path>"
        super().__init__(f"module /{module} not found (searched: {where})")


class HeaderMismatch(RegistryError):
    def __init__(self, path, declared: str):
        self.path = str(path)
        self.declared = declared
        super().__init__(f"{self.path}: header declares /{declared}, which does not match the file name")


class CyclicImport(RegistryError):
    def __init__(self, chain):
        self.chain = tuple(chain)
        super().__init__("cyclic import: " + " -> ".join("/" + m for m in self.chain))


class ModuleRegistry:
    """Maps module names to parsed programs, loading ``<dir>/<name>.mod`` lazily.

    ``loading`` holds the modules whose imports are currently being expanded,
    outermost first; meeting one of them again means an import cycle.
    """

    def __init__(self, search_path=()):
        self.search_path = [Path(p) for p in search_path]
        self.cache: dict = {}
        self.loading: list = []

    @classmethod
    def from_environment(cls, paths=(), bundled: bool = True) -> "ModuleRegistry":
        """Search ``paths``, then ``$MODLANG_PATH``, then the current directory.

        The bundled module directory is appended last when *bundled* is true.
        """
        search = list(paths)
        env = os.environ.get(ENV_VAR)
        if env:
            search.extend(p for p in env.split(os.pathsep) if p)
        search.append(Path.cwd())
        if bundled:
            search.append(BUNDLED_DIR)
        return cls(search)

    def register(self, name: str, program) -> "ModuleRegistry":
        """Install *program* as module *name*; it shadows any file of that name."""
        if not is_ident(name):
            raise ValueError(f"invalid module name {name!r}")
        self.cache[name] = tuple(program)
        return self

    def resolve(self, name: str) -> tuple:
        """Return the declarations of module *name*, loading it on first use."""
        if name in self.loading:
            raise CyclicImport([*self.loading[self.loading.index(name):], name])
        if name in self.cache:
            return self.cache[name]
        searched = []
        for directory in self.search_path:
            path = directory / f"{name}.mod"
            searched.append(path)
            if path.is_file():
                declared, program = parse_module_file(path.read_text(encoding="utf-8"))
                if declared != name:
                    raise HeaderMismatch(path, declared)
                self.cache[name] = program
                return program
        raise ModuleNotFound(name, searched)

    def expand(self, name: str) -> tuple:
        """Module *name*'s declarations with every import spliced in place, transitively."""
        program = self.resolve(name)
        self.loading.append(name)
        try:
            out = []
            for d in program:
                if isinstance(d, Import):
                    out.extend(self.expand(d.module))
                else:
                    out.append(d)
            return tuple(out)
        finally:
            self.loading.pop()
