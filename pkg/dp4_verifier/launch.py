"""
Launch script for the dp4 verifier.
Loads the .env file and runs the command line.
"""
import logging
import sys
from pathlib import Path

from dotenv import load_dotenv

# Set up logging
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s [%(levelname)s] %(message)s",
    handlers=[logging.StreamHandler(sys.stderr)]
)
logger = logging.getLogger(__name__)

ROOT = Path(__file__).resolve().parent
sys.path.insert(0, str(ROOT))

# Load environment variables
env_path = ROOT / ".env"
if env_path.exists():
    load_dotenv(env_path)
    logger.info("Loaded environment variables from .env file")


def main() -> int:
    """Run the dp4 command with the process arguments"""
    from app.main import main as run

    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
