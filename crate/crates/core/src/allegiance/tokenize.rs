/// Splits tweet text into lowercase tokens.
///
/// Whitespace-separated chunks that look like URLs are dropped. Within a
/// chunk a token is a maximal run of alphanumerics and underscores, optionally
/// led by `#` or `@`, so hashtags and mentions survive as single tokens.
/// Everything else is punctuation. Accented letters are kept as they are.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for chunk in text.split_whitespace() {
        if is_url(chunk) {
            continue;
        }
        let lower = chunk.to_lowercase();
        let mut current = String::new();
        let mut chars = lower.chars().peekable();
        while let Some(c) = chars.next() {
            if is_word_char(c) {
                current.push(c);
            } else {
                if !current.is_empty() {
                    tokens.push(std::mem::take(&mut current));
                }
                if (c == '#' || c == '@') && chars.peek().is_some_and(|n| is_word_char(*n)) {
                    current.push(c);
                }
            }
        }
        if !current.is_empty() {
            tokens.push(current);
        }
    }
    tokens
}

#[inline]
fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn is_url(chunk: &str) -> bool {
    let c = chunk.trim_start_matches(|c: char| !c.is_alphanumeric());
    let lower = c.get(..8).unwrap_or(c).to_ascii_lowercase();
    lower.starts_with("http://") || lower.starts_with("https://") || lower.starts_with("www.")
}
