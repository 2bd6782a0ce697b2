"""
Compteurs et durées des énumérations, transformées et constructions

Les compteurs sont indexés par (nom, étiquettes); les durées gardent une
fenêtre glissante par clé. Toutes les méthodes sont sûres entre threads,
l'énumération parallèle incrémentant depuis ses workers.
"""
import time
import threading
import functools
from contextlib import contextmanager
from typing import Dict, Any, Tuple
from collections import defaultdict, deque

import numpy as np

from src.logger import get_logger, soq_logger

DURATION_WINDOW = 1000

MetricKey = Tuple[str, Tuple[Tuple[str, str], ...]]


def _key(name: str, tags: Dict[str, str] = None) -> MetricKey:
    return name, tuple(sorted((tags or {}).items()))


def _label(key: MetricKey) -> str:
    name, tags = key
    if not tags:
        return name
    return name + '{' + ','.join(f"{k}={v}" for k, v in tags) + '}'


class MetricsCollector:
    """Collecteur thread-safe: compteurs entiers et durées en secondes"""

    def __init__(self):
        self.logger = get_logger('metrics')
        self._counters: Dict[MetricKey, int] = defaultdict(int)
        self._durations: Dict[MetricKey, deque] = defaultdict(lambda: deque(maxlen=DURATION_WINDOW))
        self._lock = threading.Lock()

    def increment_counter(self, name: str, value: int = 1, tags: Dict[str, str] = None):
        with self._lock:
            self._counters[_key(name, tags)] += value

    def record_duration(self, name: str, seconds: float, tags: Dict[str, str] = None):
        with self._lock:
            self._durations[_key(name, tags)].append(seconds)

    def get_counter(self, name: str, tags: Dict[str, str] = None) -> int:
        """Valeur exacte d'un compteur (0 s'il n'a jamais été incrémenté)"""
        with self._lock:
            return self._counters.get(_key(name, tags), 0)

    def total(self, name: str) -> int:
        """Somme d'un compteur sur toutes ses étiquettes"""
        with self._lock:
            return sum(v for (n, _), v in self._counters.items() if n == name)

    def snapshot(self) -> Dict[str, Any]:
        """
        Résumé sérialisable: compteurs, statistiques de durée et débit
        d'énumération en mots de code par seconde (None sans énumération).
        """
        with self._lock:
            durations = {}
            for key, values in self._durations.items():
                if values:
                    arr = np.fromiter(values, dtype=float)
                    durations[_label(key)] = {
                        'count': int(arr.size),
                        'mean': float(arr.mean()),
                        'p95': float(np.percentile(arr, 95)),
                        'max': float(arr.max()),
                    }

            enumerated = sum(v for (n, _), v in self._counters.items() if n == 'codewords_enumerated')
            spent = sum(sum(v) for (n, _), v in self._durations.items() if n == 'enumeration')
            return {
                'counters': {_label(k): v for k, v in self._counters.items()},
                'durations': durations,
                'codewords_per_second': enumerated / spent if spent > 0 else None,
            }

    def clear_metrics(self):
        with self._lock:
            self._counters.clear()
            self._durations.clear()


class PerformanceMonitor:
    """Chronométrage des opérations coûteuses"""

    def __init__(self, metrics_collector: MetricsCollector):
        self.metrics = metrics_collector

    @contextmanager
    def track(self, operation_name: str, component: str = "unknown"):
        """Mesure la durée d'un bloc; un échec incrémente `<operation>.error`"""
        start_time = time.perf_counter()
        failed = False
        try:
            yield
        except Exception as e:
            failed = True
            self.metrics.increment_counter(
                f"{operation_name}.error",
                tags={'component': component, 'error_type': type(e).__name__}
            )
            raise
        finally:
            execution_time = time.perf_counter() - start_time
            self.metrics.record_duration(operation_name, execution_time, {'component': component})
            soq_logger.log_performance_metrics(component, {
                'operation': operation_name,
                'execution_time': f"{execution_time:.4f}",
                'success': not failed
            })

    def monitor_function(self, operation_name: str, component: str = "unknown"):
        def decorator(func):
            @functools.wraps(func)
            def wrapper(*args, **kwargs):
                with self.track(operation_name, component):
                    return func(*args, **kwargs)
            return wrapper
        return decorator


metrics_collector = MetricsCollector()
performance_monitor = PerformanceMonitor(metrics_collector)

def get_metrics_collector() -> MetricsCollector:
    return metrics_collector

def get_performance_monitor() -> PerformanceMonitor:
    return performance_monitor
