use serde::Serialize;

pub enum Failure {
    /// A mathematical check failed; the evidence is already printed.
    Check,
    Usage(String),
}

impl From<moufang_toric::Error> for Failure {
    fn from(e: moufang_toric::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

pub fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn verdict(ok: bool) -> CmdResult {
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

pub struct Out {
    pub json: bool,
    pub seed: u64,
}

impl Out {
    /// One json line, or the human rendering.
    pub fn emit<T: Serialize>(&self, value: &T, human: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string(value).expect("serializable"));
        } else {
            println!("{}", human());
        }
    }
}

/// Runs `$body` with `$m` bound to the named loop model.
macro_rules! with_model {
    ($name:expr, $m:ident => $body:expr) => {
        match $name {
            "finite16" => {
                let $m = moufang_toric::loops::Finite16::new();
                $body
            }
            "oct-rational" => {
                let $m = moufang_toric::loops::OctonionModel::default();
                $body
            }
            other => {
                return Err($crate::output::usage(format!(
                    "unknown model `{other}` (expected finite16 or oct-rational)"
                )))
            }
        }
    };
}

pub(crate) use with_model;
