"""Newline-delimited JSON messages of the remote simulator protocol.

Every message is one JSON object on one line with a "type" field. Requests
other than hello carry a client-chosen "id" that the response echoes, so a
client may pipeline several requests before reading.
"""

import json
from dataclasses import dataclass
from typing import Any, Optional

from ..models.action_space import Action, ActionSpace
from .exceptions import ProtocolError

PROTOCOL_VERSION = 1

# Wire error codes
STALE_HANDLE = "stale_handle"
BAD_ACTION = "bad_action"
MALFORMED = "malformed"
INTERNAL = "internal"

MESSAGE_TYPES = {"hello", "reset", "step", "release", "error"}


@dataclass(frozen=True)
class StateHandle:
    """Token naming a state held by the remote simulator.

    Attributes:
        token: Opaque identifier issued by the simulator
    """

    token: str


@dataclass(frozen=True)
class ReleaseAck:
    """Acknowledgement of a release request.

    Attributes:
        ok: True once the request was processed
        warnings: One entry per handle that was already unknown
    """

    ok: bool
    warnings: tuple[str, ...] = ()


def encode(message: dict) -> bytes:
    """Serialize a message to one newline-terminated line."""
    return (json.dumps(message, separators=(",", ":")) + "\n").encode("utf-8")


def decode(raw: bytes | str) -> dict:
    """Parse one line into a message.

    Raises:
        ProtocolError: If the line is not a JSON object with a known type
    """
    line = raw.decode("utf-8", errors="replace") if isinstance(raw, bytes) else raw
    line = line.strip()
    try:
        message = json.loads(line)
    except json.JSONDecodeError as e:
        raise ProtocolError(f"Malformed JSON ({e.msg})", line) from e

    if not isinstance(message, dict) or message.get("type") not in MESSAGE_TYPES:
        raise ProtocolError("Message is not an object with a known type", line)
    return message


def hello(descriptor: Optional[dict] = None) -> dict:
    message: dict[str, Any] = {"type": "hello", "protocol_version": PROTOCOL_VERSION}
    if descriptor is not None:
        message["descriptor"] = descriptor
    return message


def error(code: str, message: str, request_id: Optional[int] = None) -> dict:
    reply: dict[str, Any] = {"type": "error", "code": code, "message": message}
    if request_id is not None:
        reply["id"] = request_id
    return reply


def action_to_wire(action: Action):
    """Discrete actions travel as integers, continuous ones as lists."""
    return action if isinstance(action, int) else [float(v) for v in action]


def action_from_wire(space: ActionSpace, value) -> Action:
    """Canonical action from its wire form.

    Raises:
        ValueError: If the value is not in the action space
    """
    return space.normalize(value)
