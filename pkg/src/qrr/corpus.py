"""Access to the identity files shipped with the package."""

from __future__ import annotations

from importlib import resources
from typing import List

from .identity import IdentitySpec
from .parser import parse_file


def corpus_root():
    return resources.files(__package__) / "corpus"


def corpus_names() -> List[str]:
    """Stem names of the shipped identity files, sorted."""
    return sorted(p.name[:-3] for p in corpus_root().iterdir() if p.name.endswith(".id"))


def load(name: str) -> IdentitySpec:
    """Load a single shipped identity by file stem (e.g. 'double_mod10_2_8')."""
    text = (corpus_root() / (name + ".id")).read_text()
    specs = parse_file(text)
    if len(specs) != 1:
        raise ValueError("corpus file %s holds %d identities" % (name, len(specs)))
    return specs[0]


def load_all() -> List[IdentitySpec]:
    return [load(n) for n in corpus_names()]
