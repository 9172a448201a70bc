# middleware/timing.py
import logging
import time

logger = logging.getLogger(__name__)


class ComputeTimingMiddleware:
    """Заголовок X-Compute-Time-Ms с временем обработки запроса"""

    def __init__(self, app, slow_threshold_ms: float = 5000.0):
        self.app = app
        self.slow_threshold_ms = slow_threshold_ms

    async def __call__(self, scope, receive, send):
        if scope["type"] != "http":
            return await self.app(scope, receive, send)

        started = time.perf_counter()

        async def send_with_timing(message):
            if message["type"] == "http.response.start":
                elapsed = (time.perf_counter() - started) * 1000
                headers = list(message.get("headers", []))
                headers.append((b"x-compute-time-ms", f"{elapsed:.1f}".encode()))
                message["headers"] = headers
                # Медленные запросы отмечаем в логе
                if elapsed > self.slow_threshold_ms:
                    logger.warning("⚠️ Медленный запрос %s: %.0f мс", scope.get("path"), elapsed)
            await send(message)

        return await self.app(scope, receive, send_with_timing)
