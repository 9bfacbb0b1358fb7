/** Minimal read-only syntax highlighting for the buggy-code pane.
 *
 * Escapes everything first, then wraps comments, strings, numbers, and
 * keywords in spans. Good enough for short single-function exercises; not a
 * general-purpose lexer.
 */

const PYTHON_KEYWORDS = new Set(
  ("False None True and as assert break class continue def del elif else except finally " +
    "for from global if import in is lambda nonlocal not or pass raise return try while " +
    "with yield").split(" "),
);

const C_KEYWORDS = new Set(
  ("auto break case char const continue default do double else enum extern float for goto " +
    "if int long register return short signed sizeof static struct switch typedef union " +
    "unsigned void volatile while").split(" "),
);

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const PYTHON_TOKEN_RE =
  /(#[^\n]*)|("(?:\\.|[^"\\\n])*"|'(?:\\.|[^'\\\n])*')|(\b\d(?:[\w.]|[eE][+-])*\b)|([A-Za-z_]\w*)/g;

const C_TOKEN_RE =
  /(\/\/[^\n]*|\/\*[\s\S]*?\*\/)|("(?:\\.|[^"\\\n])*"|'(?:\\.|[^'\\\n])*')|(\b\d(?:[\w.]|[eE][+-])*\b)|([A-Za-z_]\w*)/g;

export function highlight(code: string, language: string): string {
  const isC = language === "C";
  const keywords = isC ? C_KEYWORDS : PYTHON_KEYWORDS;
  const tokenRe = isC ? C_TOKEN_RE : PYTHON_TOKEN_RE;
  let html = "";
  let cursor = 0;
  for (const match of code.matchAll(tokenRe)) {
    const index = match.index ?? 0;
    html += escapeHtml(code.slice(cursor, index));
    const [text, comment, str, num, word] = match;
    if (comment !== undefined) html += `<span class="tok-comment">${escapeHtml(text)}</span>`;
    else if (str !== undefined) html += `<span class="tok-string">${escapeHtml(text)}</span>`;
    else if (num !== undefined) html += `<span class="tok-number">${escapeHtml(text)}</span>`;
    else if (word !== undefined && keywords.has(word))
      html += `<span class="tok-keyword">${escapeHtml(text)}</span>`;
    else html += escapeHtml(text);
    cursor = index + text.length;
  }
  html += escapeHtml(code.slice(cursor));
  return html;
}
