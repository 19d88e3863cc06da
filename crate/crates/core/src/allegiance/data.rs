use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use super::AllegianceError;

/// Manual annotation of a training tweet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "n")]
    Negative = 0,
    #[serde(rename = "p")]
    Positive = 1,
}

impl Label {
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Negative => "n",
            Label::Positive => "p",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledExample {
    pub text: String,
    pub label: Label,
}

impl LabeledExample {
    pub fn new(text: impl Into<String>, label: Label) -> Self {
        Self { text: text.into(), label }
    }
}

/// Reads a `text,label` CSV with labels `n`/`p`.
pub fn read_labeled_csv<R: Read>(input: R) -> Result<Vec<LabeledExample>, AllegianceError> {
    let mut rdr = csv::Reader::from_reader(input);
    let headers = rdr.headers()?.clone();
    let col = |name: &str| {
        headers.iter().position(|h| h.trim() == name).ok_or_else(|| AllegianceError::BadRow {
            row: 0,
            reason: format!("missing column `{name}`"),
        })
    };
    let (text_col, label_col) = (col("text")?, col("label")?);
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let bad = |reason: String| AllegianceError::BadRow { row: i + 1, reason };
        let text = rec.get(text_col).ok_or_else(|| bad("missing text".into()))?;
        let label = match rec.get(label_col).map(str::trim) {
            Some("n") | Some("N") => Label::Negative,
            Some("p") | Some("P") => Label::Positive,
            other => return Err(bad(format!("label must be n or p, got {other:?}"))),
        };
        out.push(LabeledExample::new(text, label));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_text_label_columns() {
        let csv = "text,label\n\"hola, PAN\",p\nfraude,n\n";
        let ex = read_labeled_csv(csv.as_bytes()).unwrap();
        assert_eq!(ex, vec![LabeledExample::new("hola, PAN", Label::Positive), LabeledExample::new("fraude", Label::Negative)]);
        assert!(read_labeled_csv("text,label\nx,maybe\n".as_bytes()).is_err());
        assert!(read_labeled_csv("body,label\nx,p\n".as_bytes()).is_err());
    }
}
