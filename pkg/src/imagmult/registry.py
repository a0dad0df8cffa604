import threading
from collections.abc import Callable
from typing import TYPE_CHECKING, Protocol

from .enums import BackendLifetime, BackendRole, CurveKind
from .exceptions import UnsupportedError


if TYPE_CHECKING:
    from .curves import CurveModel
    from .ff import ExtField


class PointCountBackend(Protocol):
    def count(self, curve: "CurveModel", field: "ExtField") -> int: ...


class BackendConfig[T]:
    def __init__(self, provider: Callable[[], T], lifetime: BackendLifetime) -> None:
        self.provider = provider
        self.lifetime = lifetime


type BackendKey = tuple[BackendRole, CurveKind]


class Registry:
    """
    Registry of point-counting backends.

    Maps a (role, curve kind) pair to the class that counts points for that
    family, either with the vectorised kernels or by exhaustive enumeration.
    """

    def __init__(self) -> None:
        self._registry: dict[BackendKey, BackendConfig] = {}
        self._singletons: dict[BackendKey, PointCountBackend] = {}
        self._lock = threading.Lock()

    def register(
        self,
        role: BackendRole,
        kind: CurveKind,
        provider: Callable[[], PointCountBackend],
        lifetime: BackendLifetime = BackendLifetime.SINGLETON,
    ) -> None:
        """
        Registers a backend provider for a curve family.

        Args:
            role: Whether the backend is the fast counter or the oracle.
            kind: The curve family it handles.
            provider: Zero-argument callable creating the backend.
            lifetime: Whether one instance is shared or a new one is built per call.

        Raises:
            UnsupportedError: If the provider is not callable.
        """
        if not callable(provider):
            raise UnsupportedError(f"Provider for {role.value}/{kind.value} must be callable.")
        with self._lock:
            self._registry[(role, kind)] = BackendConfig(provider, lifetime)
            self._singletons.pop((role, kind), None)

    def get_config(self, role: BackendRole, kind: CurveKind) -> BackendConfig | None:
        return self._registry.get((role, kind))

    def resolve(self, role: BackendRole, kind: CurveKind) -> PointCountBackend:
        """
        Resolves the backend for a curve family.

        Raises:
            UnsupportedError: If nothing is registered for the pair.
        """
        config = self.get_config(role, kind)
        if config is None:
            raise UnsupportedError(f"No {role.value} backend registered for {kind.value} curves")

        if config.lifetime == BackendLifetime.TRANSIENT:
            return config.provider()

        # Double-checked locking
        key = (role, kind)
        if key in self._singletons:
            return self._singletons[key]
        with self._lock:
            if key not in self._singletons:
                self._singletons[key] = config.provider()
            return self._singletons[key]

    def reset(self) -> None:
        """
        Clear registrations and cached instances.
        Useful for testing.
        """
        with self._lock:
            self._registry.clear()
            self._singletons.clear()


# Global default registry
default_registry = Registry()


def _registering[C: type](role: BackendRole, kind: CurveKind, lifetime: BackendLifetime) -> Callable[[C], C]:
    def decorator(cls: C) -> C:
        default_registry.register(role, kind, cls, lifetime)
        return cls

    return decorator


def point_counter[C: type](
    kind: CurveKind, lifetime: BackendLifetime = BackendLifetime.SINGLETON
) -> Callable[[C], C]:
    """
    Class decorator registering the fast point counter for a curve family.
    """
    return _registering(BackendRole.COUNTER, kind, lifetime)


def point_oracle[C: type](
    kind: CurveKind, lifetime: BackendLifetime = BackendLifetime.SINGLETON
) -> Callable[[C], C]:
    """
    Class decorator registering the brute-force oracle for a curve family.
    """
    return _registering(BackendRole.ORACLE, kind, lifetime)
