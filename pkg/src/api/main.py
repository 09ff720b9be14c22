# api/main.py
import uvicorn
from src.api.app import create_app
from src.config import get_settings
from src.utils.logger import configure_logging, get_logger

# Configure logging before any other operations
configure_logging()
logger = get_logger(__name__)

app = create_app()

if __name__ == "__main__":
    settings = get_settings()
    logger.info("Starting development server...")
    uvicorn.run("src.api.main:app", host=settings.api.host, port=settings.api.port, reload=settings.debug)
