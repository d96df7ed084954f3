"""A small, error-tolerant DOM built on :mod:`html.parser`.

Only what the metadata extractors need: element tree, attributes, text
content and document order.  Unknown or mismatched end tags are ignored.
"""

from __future__ import annotations

from html.parser import HTMLParser
from typing import Iterator, Union

VOID_ELEMENTS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)
# opening one of these closes an open sibling of the same kind
_SELF_NESTING_CLOSERS = {
    "p": {"p"},
    "li": {"li"},
    "dt": {"dt", "dd"},
    "dd": {"dt", "dd"},
    "tr": {"tr"},
    "td": {"td", "th"},
    "th": {"td", "th"},
    "option": {"option"},
}
_INVISIBLE = frozenset({"script", "style", "template", "noscript", "head", "title"})


class Element:
    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag: str, attrs: dict[str, str], parent: Element | None = None):
        self.tag = tag
        self.attrs = attrs
        self.children: list[Union[Element, str]] = []
        self.parent = parent

    def __repr__(self) -> str:
        return f"<Element {self.tag} {self.attrs}>"

    def get(self, name: str, default: str | None = None) -> str | None:
        return self.attrs.get(name, default)

    def iter(self) -> Iterator[Element]:
        """Pre-order traversal (document order), including self."""
        stack: list[Element] = [self]
        while stack:
            el = stack.pop()
            yield el
            stack.extend(c for c in reversed(el.children) if isinstance(c, Element))

    def element_children(self) -> list[Element]:
        return [c for c in self.children if isinstance(c, Element)]

    def text_content(self) -> str:
        parts: list[str] = []
        stack: list[Union[Element, str]] = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, str):
                parts.append(node)
            else:
                stack.extend(reversed(node.children))
        return "".join(parts)

    def language(self) -> str | None:
        el: Element | None = self
        while el is not None:
            lang = el.attrs.get("lang")
            if lang is None:
                lang = el.attrs.get("xml:lang")
            if lang is not None:
                return lang.strip() or None
            el = el.parent
        return None


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = Element("#document", {})
        self.stack: list[Element] = [self.root]

    def handle_starttag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        closers = _SELF_NESTING_CLOSERS.get(tag)
        if closers and self.stack[-1].tag in closers:
            self.stack.pop()
        attr_map: dict[str, str] = {}
        for name, value in attrs:
            # first occurrence wins, as in browsers
            attr_map.setdefault(name, "" if value is None else value)
        el = Element(tag, attr_map, self.stack[-1])
        self.stack[-1].children.append(el)
        if tag not in VOID_ELEMENTS:
            self.stack.append(el)

    def handle_startendtag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        self.handle_starttag(tag, attrs)
        if tag not in VOID_ELEMENTS and self.stack[-1].tag == tag:
            self.stack.pop()

    def handle_endtag(self, tag: str) -> None:
        for depth in range(len(self.stack) - 1, 0, -1):
            if self.stack[depth].tag == tag:
                del self.stack[depth:]
                return

    def handle_data(self, data: str) -> None:
        self.stack[-1].children.append(data)


def parse_html(text: str) -> Element:
    builder = _TreeBuilder()
    builder.feed(text)
    builder.close()
    return builder.root


def visible_text(root: Element) -> str:
    """Whitespace-collapsed text outside scripts, styles and the document head."""
    parts: list[str] = []
    stack: list[Union[Element, str]] = [root]
    while stack:
        node = stack.pop()
        if isinstance(node, str):
            parts.append(node)
        elif node.tag not in _INVISIBLE:
            stack.extend(reversed(node.children))
    return " ".join(" ".join(parts).split())
