import logging
import os

import markdown

from errors import SchemaError

logger = logging.getLogger(__name__)

DOCS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "docs")


def help_path(verb: str) -> str:
    return os.path.join(DOCS_DIR, f"{verb}.md")


def available_verbs() -> list:
    return sorted(name[:-3] for name in os.listdir(DOCS_DIR) if name.endswith(".md"))


def load_markdown(verb: str) -> str:
    """Load the help page of a CLI verb."""
    md_path = help_path(verb)
    logger.debug(f"Loading help page: {md_path}")
    if not os.path.exists(md_path):
        raise SchemaError(f"No help page for '{verb}'; available: {', '.join(available_verbs())}")
    with open(md_path, 'r', encoding='utf-8') as f:
        return f.read()


def render_html(md_content: str) -> str:
    """Render a help page as a standalone HTML document."""
    html_content = markdown.markdown(md_content, extensions=['extra'])
    return f"<html>\n<body>\n{html_content}\n</body>\n</html>\n"


def help_document(verb: str, html: bool = False) -> dict:
    md_content = load_markdown(verb)
    if html:
        return {"verb": verb, "format": "html", "text": render_html(md_content)}
    return {"verb": verb, "format": "markdown", "text": md_content}
