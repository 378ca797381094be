"""Replace volatile literals (IPv4 addresses, domain names) with placeholders."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

IP_PLACEHOLDER = "1.1.1.1"
DOMAIN_PLACEHOLDER = "example.com"

DEFAULT_TLDS = ("com", "net", "org", "io", "edu", "gov", "ru", "de", "uk", "info", "local")

# a dotted quad may not continue a longer digit/dot run on either side
_IP_RE = re.compile(
    r"(?<!\d)(?<!\d\.)"
    r"(\d{1,3})\.(\d{1,3})\.(\d{1,3})\.(\d{1,3})"
    r"(?!\d)(?!\.\d)"
)
_LABEL = r"[A-Za-z0-9](?:[A-Za-z0-9-]*[A-Za-z0-9])?"


@dataclass(frozen=True)
class NormalizationReport:
    output: str
    ip_replacements: int = 0
    domain_replacements: int = 0


def normalize_ips(raw: str) -> NormalizationReport:
    count = 0

    def repl(m: re.Match) -> str:
        nonlocal count
        if all(int(octet) <= 255 for octet in m.groups()):
            count += 1
            return IP_PLACEHOLDER
        return m.group(0)

    out = _IP_RE.sub(repl, raw)
    return NormalizationReport(out, ip_replacements=count)


def _domain_re(tlds: Iterable[str]) -> re.Pattern:
    alts = "|".join(sorted((re.escape(t) for t in tlds), key=len, reverse=True))
    return re.compile(
        rf"(?<![\w.-])(?:{_LABEL}\.)+(?:{alts})(?![\w-])(?!\.[\w-])",
        re.IGNORECASE,
    )


_DEFAULT_DOMAIN_RE = _domain_re(DEFAULT_TLDS)


def normalize_domains(raw: str, tlds: Iterable[str] | None = None) -> NormalizationReport:
    pattern = _DEFAULT_DOMAIN_RE if tlds is None else _domain_re(tlds)
    out, count = pattern.subn(DOMAIN_PLACEHOLDER, raw)
    return NormalizationReport(out, domain_replacements=count)


def normalize(raw: str, tlds: Iterable[str] | None = None) -> str:
    """IPs first, then domains.

    >>> normalize("nc 10.0.0.5 4444; dig x.com")
    'nc 1.1.1.1 4444; dig example.com'
    """
    return normalize_domains(normalize_ips(raw).output, tlds).output


def load_tld_list(path: str | Path) -> tuple[str, ...]:
    """Read a TLD allow-list: one TLD per line, blank lines and ``#`` comments skipped."""
    tlds = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip().lstrip(".")
        if line and not line.startswith("#"):
            tlds.append(line.lower())
    return tuple(tlds)
