use crate::error::{Error, Result};

use super::MAX_ELEMENTS;

/// An ordered, nonempty set of distinct element labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    labels: Vec<String>,
}

/// Labels are single tokens: no whitespace and none of the characters the
/// problem-file syntax reserves.
pub(crate) fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label.chars().any(|c| {
            c.is_whitespace() || matches!(c, '<' | '{' | '}' | '#' | ',' | '|' | ':' | '=')
        })
}

impl Universe {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::UniverseTooLarge {
                n: labels.len(),
                max: MAX_ELEMENTS,
            });
        }
        for (i, label) in labels.iter().enumerate() {
            if !valid_label(label) {
                return Err(Error::InvalidLabel(label.clone()));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Universe { labels })
    }

    /// `a, b, c, ...` for `n ≤ 26`, otherwise `x0, x1, ...`.
    pub fn standard(n: usize) -> Result<Self> {
        if n <= 26 {
            Self::new((0..n).map(|i| char::from(b'a' + i as u8).to_string()))
        } else {
            Self::new((0..n).map(|i| format!("x{i}")))
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}
