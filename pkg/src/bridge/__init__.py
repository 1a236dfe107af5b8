"""Remote simulator bridge over newline-delimited JSON."""

from .exceptions import (
    BridgeConnectionError,
    BridgeError,
    HandshakeError,
    ProtocolError,
    RemoteError,
    StaleHandleError,
)
from .protocol import PROTOCOL_VERSION, ReleaseAck, StateHandle
from .client import (
    BridgeSession,
    RemoteEnvironment,
    bridge_connect,
    bridge_release,
    bridge_reset,
    bridge_step,
    bridge_step_many,
)
from .server import LoopbackServer

__all__ = [
    "BridgeError",
    "BridgeConnectionError",
    "HandshakeError",
    "ProtocolError",
    "RemoteError",
    "StaleHandleError",
    "PROTOCOL_VERSION",
    "ReleaseAck",
    "StateHandle",
    "BridgeSession",
    "RemoteEnvironment",
    "bridge_connect",
    "bridge_release",
    "bridge_reset",
    "bridge_step",
    "bridge_step_many",
    "LoopbackServer",
]
