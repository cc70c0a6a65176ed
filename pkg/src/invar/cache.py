"""Content-addressed on-disk cache for command reports.

Entries are keyed by a SHA-256 digest of the canonical JSON of the inputs
(command name, arguments, tool version).  Each entry file stores a version
stamp and a payload digest; entries whose stamp or digest does not match are
discarded and recomputed, so a version bump or a corrupted file is always a
clean miss.
"""

from __future__ import annotations

import hashlib
import json
import os

TOOL_VERSION = "1"


def digest_key(parts) -> str:
    """Stable digest of a JSON-serializable description of a computation."""
    blob = json.dumps(parts, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class ResultCache:
    """A directory of content-addressed entries with integrity checking."""

    def __init__(self, directory):
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, key):
        return os.path.join(self.directory, key + ".json")

    def get(self, key):
        """The cached payload bytes, or None on miss/stale/corrupt."""
        path = self._path(key)
        try:
            with open(path, "rb") as fh:
                entry = json.loads(fh.read().decode())
            payload = entry["payload"].encode()
            if (entry["version"] == TOOL_VERSION
                    and entry["digest"] == hashlib.sha256(payload).hexdigest()):
                return payload
        except (OSError, ValueError, KeyError, UnicodeDecodeError):
            pass
        try:
            os.remove(path)
        except OSError:
            pass
        return None

    def put(self, key, payload: bytes):
        entry = {
            "version": TOOL_VERSION,
            "digest": hashlib.sha256(payload).hexdigest(),
            "payload": payload.decode(),
        }
        tmp = self._path(key) + ".tmp.%d" % os.getpid()
        with open(tmp, "w") as fh:
            json.dump(entry, fh)
        os.replace(tmp, self._path(key))
