//! The line-oriented model file format.
//!
//! ```text
//! worlds: w1 w2
//! name 'i = w1
//! action a pos: (w1,w2)
//! action a neg:
//! prop p pos: w2
//! prop p neg: w2
//! ```

use super::model::Model;
use super::SemanticsError;

fn file_error(line: usize, message: impl Into<String>) -> SemanticsError {
    SemanticsError::ModelFile {
        line,
        message: message.into(),
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

fn is_world(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_pairs(text: &str, line: usize) -> Result<Vec<(String, String)>, SemanticsError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| file_error(line, format!("expected `(` at `{rest}`")))?;
        let close = inner
            .find(')')
            .ok_or_else(|| file_error(line, "unclosed pair"))?;
        let (a, b) = inner[..close]
            .split_once(',')
            .ok_or_else(|| file_error(line, "a pair needs two worlds"))?;
        out.push((a.trim().to_string(), b.trim().to_string()));
        rest = inner[close + 1..].trim_start();
    }
    Ok(out)
}

/// Parses a model file.
pub fn parse_model(text: &str) -> Result<Model, SemanticsError> {
    let mut model: Option<Model> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("worlds:") {
            if model.is_some() {
                return Err(file_error(line, "`worlds:` given twice"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if let Some(bad) = names.iter().find(|w| !is_world(w)) {
                return Err(file_error(line, format!("bad world name `{bad}`")));
            }
            model = Some(Model::new(names).map_err(|e| file_error(line, e.to_string()))?);
            continue;
        }
        let m = model
            .as_mut()
            .ok_or_else(|| file_error(line, "`worlds:` must come first"))?;
        let world = |m: &Model, w: &str| m.world_index(w).map_err(|e| file_error(line, e.to_string()));
        let mut words = content.splitn(2, char::is_whitespace);
        let keyword = words.next().unwrap_or("");
        let rest = words.next().unwrap_or("").trim();
        match keyword {
            "name" => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| file_error(line, "expected `name 'i = w`"))?;
                let nominal = lhs
                    .trim()
                    .strip_prefix('\'')
                    .filter(|n| is_ident(n))
                    .ok_or_else(|| file_error(line, format!("bad nominal `{}`", lhs.trim())))?;
                let w = world(m, rhs.trim())?;
                if m.named(nominal).is_ok() {
                    return Err(file_error(line, format!("nominal '{nominal} named twice")));
                }
                m.name(nominal, w).map_err(|e| file_error(line, e.to_string()))?;
            }
            "action" | "prop" => {
                let (head, body) = rest
                    .split_once(':')
                    .ok_or_else(|| file_error(line, "missing `:`"))?;
                let mut head = head.split_whitespace();
                let (name, side) = match (head.next(), head.next(), head.next()) {
                    (Some(n), Some(s), None) if is_ident(n) && (s == "pos" || s == "neg") => {
                        (n, s == "pos")
                    }
                    _ => return Err(file_error(line, format!("expected `{keyword} NAME pos|neg:`"))),
                };
                if keyword == "action" {
                    m.declare_action(name);
                    for (a, b) in parse_pairs(body, line)? {
                        let (a, b) = (world(m, &a)?, world(m, &b)?);
                        if side {
                            m.add_pos_edge(name, a, b);
                        } else {
                            m.add_neg_edge(name, a, b);
                        }
                    }
                } else {
                    m.declare_prop(name);
                    for w in body.split_whitespace() {
                        let w = world(m, w)?;
                        if side {
                            m.add_pos_val(name, w);
                        } else {
                            m.add_neg_val(name, w);
                        }
                    }
                }
            }
            other => return Err(file_error(line, format!("unknown directive `{other}`"))),
        }
    }
    model.ok_or_else(|| file_error(1, "missing `worlds:` line"))
}

/// Renders a model canonically; `parse_model` inverts it exactly.
pub fn emit_model(m: &Model) -> String {
    let mut out = String::new();
    out.push_str("worlds:");
    for w in m.world_names() {
        out.push(' ');
        out.push_str(w);
    }
    out.push('\n');
    for (i, w) in m.naming() {
        out.push_str(&format!("name '{i} = {}\n", m.world_name(w)));
    }
    for (a, rel) in m.actions() {
        for (side, r) in [("pos", &rel.pos), ("neg", &rel.neg)] {
            out.push_str(&format!("action {a} {side}:"));
            for (x, y) in r.pairs() {
                out.push_str(&format!(" ({},{})", m.world_name(x), m.world_name(y)));
            }
            out.push('\n');
        }
    }
    for (p, val) in m.props() {
        for (side, s) in [("pos", &val.pos), ("neg", &val.neg)] {
            out.push_str(&format!("prop {p} {side}:"));
            for w in s.iter() {
                out.push(' ');
                out.push_str(m.world_name(w));
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "# sample\nworlds: w1 w2\nname 'i = w1\naction a pos: (w1,w2) (w2,w2)\nprop p neg: w2\n";

    #[test]
    fn parses_and_emits() {
        let m = parse_model(SAMPLE).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.named("i").unwrap(), 0);
        assert!(m.action("a").unwrap().pos.contains(1, 1));
        assert!(m.action("a").unwrap().neg.is_empty());
        assert!(m.prop("p").unwrap().neg.contains(1));
        let text = emit_model(&m);
        assert_eq!(
            text,
            "worlds: w1 w2\nname 'i = w1\naction a pos: (w1,w2) (w2,w2)\naction a neg:\nprop p pos:\nprop p neg: w2\n"
        );
        assert_eq!(parse_model(&text).unwrap(), m);
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_model("worlds: w1\nprop p pos: w9\n").unwrap_err();
        assert!(matches!(err, SemanticsError::ModelFile { line: 2, .. }));
        let err = parse_model("name 'i = w1\n").unwrap_err();
        assert!(matches!(err, SemanticsError::ModelFile { line: 1, .. }));
        assert!(parse_model("worlds: w1\nfoo\n").is_err());
        assert!(parse_model("worlds: w1\naction a pos: (w1 w1)\n").is_err());
    }
}
