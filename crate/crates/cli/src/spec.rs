//! Parser for distribution specs of the form `family:key=value,key=value`.

use std::ops::Range;

use record_aging::DistributionModel;
use thiserror::Error;

/// A spec that could not be turned into a model. Every variant carries the
/// byte range of the offending token in the input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("expected `family:key=value,...`, {reason}")]
    Malformed { reason: &'static str, span: Range<usize> },
    #[error("unknown family `{family}` (expected exp, erlang, lomax, weibull or invweibull)")]
    UnknownFamily { family: String, span: Range<usize> },
    #[error("family `{family}` has no parameter `{key}`")]
    UnknownParam {
        family: &'static str,
        key: String,
        span: Range<usize>,
    },
    #[error("parameter `{key}` given twice")]
    DuplicateParam { key: String, span: Range<usize> },
    #[error("missing parameter `{param}` for family `{family}`")]
    MissingParam {
        family: &'static str,
        param: &'static str,
        span: Range<usize>,
    },
    #[error("parameter `{key}` = `{value}` {reason}")]
    InvalidValue {
        key: String,
        value: String,
        reason: &'static str,
        span: Range<usize>,
    },
    #[error("parameter `{key}` must be positive, got {value}")]
    NonPositiveParam {
        key: String,
        value: String,
        span: Range<usize>,
    },
}

impl SpecError {
    pub fn span(&self) -> Range<usize> {
        match self {
            SpecError::Malformed { span, .. }
            | SpecError::UnknownFamily { span, .. }
            | SpecError::UnknownParam { span, .. }
            | SpecError::DuplicateParam { span, .. }
            | SpecError::MissingParam { span, .. }
            | SpecError::InvalidValue { span, .. }
            | SpecError::NonPositiveParam { span, .. } => span.clone(),
        }
    }

    /// The message followed by the input with the offending span underlined.
    pub fn diagnostic(&self, text: &str) -> String {
        let span = self.span();
        let pad = text[..span.start.min(text.len())].chars().count();
        let width = text.get(span.clone()).map_or(1, |s| s.chars().count().max(1));
        format!("{self}\n  {text}\n  {}{}", " ".repeat(pad), "^".repeat(width))
    }
}

struct Family {
    name: &'static str,
    aliases: &'static [&'static str],
    params: [&'static str; 2],
    arity: usize,
}

const FAMILIES: [Family; 5] = [
    Family {
        name: "exp",
        aliases: &["exp", "exponential"],
        params: ["rate", ""],
        arity: 1,
    },
    Family {
        name: "erlang",
        aliases: &["erlang"],
        params: ["shape", "rate"],
        arity: 2,
    },
    Family {
        name: "lomax",
        aliases: &["lomax"],
        params: ["shape", "scale"],
        arity: 2,
    },
    Family {
        name: "weibull",
        aliases: &["weibull"],
        params: ["shape", "scale"],
        arity: 2,
    },
    Family {
        name: "invweibull",
        aliases: &["invweibull", "inverse-weibull"],
        params: ["shape", "scale"],
        arity: 2,
    },
];

pub fn parse_dist_spec(text: &str) -> Result<DistributionModel, SpecError> {
    let Some(colon) = text.find(':') else {
        return Err(SpecError::Malformed {
            reason: "missing `:` after the family name",
            span: 0..text.len(),
        });
    };
    let name = &text[..colon];
    let family = FAMILIES
        .iter()
        .find(|f| f.aliases.contains(&name))
        .ok_or_else(|| SpecError::UnknownFamily {
            family: name.to_string(),
            span: 0..colon,
        })?;
    let params = &family.params[..family.arity];

    let mut values: [Option<f64>; 2] = [None, None];
    let mut offset = colon + 1;
    for token in text[colon + 1..].split(',') {
        let span = offset..offset + token.len();
        offset += token.len() + 1;
        let Some(eq) = token.find('=') else {
            return Err(SpecError::Malformed {
                reason: "parameters are written `key=value`",
                span,
            });
        };
        let (key, raw) = (&token[..eq], &token[eq + 1..]);
        let slot = params
            .iter()
            .position(|p| *p == key)
            .ok_or_else(|| SpecError::UnknownParam {
                family: family.name,
                key: key.to_string(),
                span: span.start..span.start + eq,
            })?;
        if values[slot].is_some() {
            return Err(SpecError::DuplicateParam {
                key: key.to_string(),
                span,
            });
        }
        let value: f64 = raw.parse().map_err(|_| SpecError::InvalidValue {
            key: key.to_string(),
            value: raw.to_string(),
            reason: "is not a decimal number",
            span: span.clone(),
        })?;
        if !value.is_finite() {
            return Err(SpecError::InvalidValue {
                key: key.to_string(),
                value: raw.to_string(),
                reason: "is not finite",
                span,
            });
        }
        if value <= 0.0 {
            return Err(SpecError::NonPositiveParam {
                key: key.to_string(),
                value: raw.to_string(),
                span,
            });
        }
        values[slot] = Some(value);
    }

    let mut got = [0.0; 2];
    for (i, param) in params.iter().enumerate() {
        got[i] = values[i].ok_or(SpecError::MissingParam {
            family: family.name,
            param,
            span: text.len()..text.len(),
        })?;
    }
    let model = match family.name {
        "exp" => DistributionModel::exponential(got[0]),
        "erlang" => {
            if got[0].fract() != 0.0 || got[0] > f64::from(u32::MAX) {
                let at = text.find("shape=").unwrap_or(colon + 1);
                return Err(SpecError::InvalidValue {
                    key: "shape".into(),
                    value: got[0].to_string(),
                    reason: "must be a whole number",
                    span: at..at + 6,
                });
            }
            DistributionModel::erlang(got[0] as u32, got[1])
        }
        "lomax" => DistributionModel::lomax(got[0], got[1]),
        "weibull" => DistributionModel::weibull(got[0], got[1]),
        _ => DistributionModel::inverse_weibull(got[0], got[1]),
    };
    // Values are positive and finite here, which every constructor accepts.
    Ok(model.expect("validated parameters"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_family() {
        assert_eq!(
            parse_dist_spec("lomax:shape=3,scale=1").unwrap(),
            DistributionModel::lomax(3.0, 1.0).unwrap()
        );
        assert_eq!(
            parse_dist_spec("exp:rate=3").unwrap(),
            DistributionModel::exponential(3.0).unwrap()
        );
        assert_eq!(
            parse_dist_spec("exponential:rate=3").unwrap(),
            DistributionModel::exponential(3.0).unwrap()
        );
        assert_eq!(
            parse_dist_spec("erlang:rate=2,shape=3").unwrap(),
            DistributionModel::erlang(3, 2.0).unwrap()
        );
        assert_eq!(
            parse_dist_spec("weibull:shape=0.5,scale=2").unwrap(),
            DistributionModel::weibull(0.5, 2.0).unwrap()
        );
        assert_eq!(
            parse_dist_spec("invweibull:shape=2,scale=2.2360679774997898").unwrap(),
            DistributionModel::inverse_weibull(2.0, 2.2360679774997898).unwrap()
        );
    }

    #[test]
    fn negative_shape_is_pinned_to_its_token() {
        let text = "lomax:shape=-1,scale=1";
        let err = parse_dist_spec(text).unwrap_err();
        assert!(matches!(err, SpecError::NonPositiveParam { ref key, .. } if key == "shape"));
        assert_eq!(&text[err.span()], "shape=-1");
        assert!(err.diagnostic(text).ends_with("\n        ^^^^^^^^"));
    }

    #[test]
    fn error_kinds_and_spans() {
        let err = parse_dist_spec("gamma:shape=2").unwrap_err();
        assert!(matches!(err, SpecError::UnknownFamily { .. }));
        assert_eq!(err.span(), 0..5);
        let err = parse_dist_spec("lomax:shape=3").unwrap_err();
        assert!(matches!(err, SpecError::MissingParam { param: "scale", .. }));
        assert_eq!(err.span(), 13..13);
        let err = parse_dist_spec("exp:rate=0").unwrap_err();
        assert!(matches!(err, SpecError::NonPositiveParam { .. }));
        let err = parse_dist_spec("exp:rate=abc").unwrap_err();
        assert!(matches!(err, SpecError::InvalidValue { .. }));
        assert_eq!(err.span(), 4..12);
        let err = parse_dist_spec("exp:lambda=1").unwrap_err();
        assert!(matches!(err, SpecError::UnknownParam { .. }));
        assert_eq!(err.span(), 4..10);
        assert!(matches!(parse_dist_spec("exp"), Err(SpecError::Malformed { .. })));
        assert!(matches!(parse_dist_spec("exp:rate"), Err(SpecError::Malformed { .. })));
        assert!(matches!(parse_dist_spec("exp:rate=1,rate=2"), Err(SpecError::DuplicateParam { .. })));
        assert!(matches!(parse_dist_spec("exp:rate=inf"), Err(SpecError::InvalidValue { .. })));
        assert!(matches!(
            parse_dist_spec("erlang:shape=2.5,rate=1"),
            Err(SpecError::InvalidValue { .. })
        ));
    }
}
