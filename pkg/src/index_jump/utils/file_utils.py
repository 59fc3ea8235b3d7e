"""Helper functions to load and save files in required format."""

from pathlib import Path


def create_folder(data_dir: str | Path) -> None:
    """Create folder if not exist."""

    data_dir = Path(data_dir)

    if not data_dir.is_dir():
        data_dir.mkdir(parents=True, exist_ok=True)


def load_text(file_path: str | Path) -> str:
    """Load UTF-8 text file e.g. a system JSON file."""

    file_path = Path(file_path)

    if not file_path.is_file():
        raise FileNotFoundError(f"'{file_path.as_posix()}' doesn't exist.")

    return file_path.read_text(encoding="utf-8")


def save_text(text: str, file_path: str | Path) -> None:
    """Save text as UTF-8, creating parent folders if required."""

    file_path = Path(file_path)
    create_folder(file_path.parent)
    file_path.write_text(text, encoding="utf-8")


# Public Interface
__all__ = ["create_folder", "load_text", "save_text"]
