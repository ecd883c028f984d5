use std::fs;
use std::io::{self, Write};
use std::path::Path;

use fproots::experiment::CsvRow;
use fproots::{Error, Poly};
use serde::Serialize;

/// Process exit codes.
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAP: u8 = 3;
pub const EXIT_VERIFY: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn verification(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_VERIFY,
            message: format!("verification failed: {}", message.into()),
        }
    }

    pub fn io(err: io::Error) -> Self {
        Self {
            code: EXIT_INPUT,
            message: format!("i/o error: {err}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::TooLarge { .. } | Error::FieldTooLarge { .. } => EXIT_CAP,
            Error::Verification(_) | Error::SweepExhausted { .. } => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

pub type CliResult<T = ()> = Result<T, Failure>;

/// Header comment, header row and records, LF-terminated.
pub fn csv_document<R: CsvRow>(comment: &str, rows: &[R]) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(format!("# {comment}\n").into_bytes());
    writer.write_record(R::HEADER).expect("in-memory write");
    for row in rows {
        writer.write_record(row.record()).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ASCII records")
}

pub fn emit(text: &str, path: Option<&Path>) -> CliResult {
    match path {
        Some(path) => fs::write(path, text).map_err(Failure::io),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(Failure::io)?;
            stdout.flush().map_err(Failure::io)
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable value");
    s.push('\n');
    s
}

#[derive(Serialize)]
pub struct Parameters {
    pub p: u64,
    pub poly: Vec<u64>,
    pub h: u64,
    pub delta: Option<f64>,
    pub c_all: Option<f64>,
    pub seed: Option<u64>,
    pub small_p_cutoff: u64,
    pub fallback_doubling: bool,
}

#[derive(Serialize)]
pub struct Counters {
    pub gcds: u64,
    pub powmods: u64,
    pub shifts: u64,
    pub doublings: u32,
    pub iterations: u32,
    pub brute_force: bool,
}

/// Self-describing record of one root-finding run.
#[derive(Serialize)]
pub struct RunRecord<T: Serialize> {
    pub command: &'static str,
    pub parameters: Parameters,
    pub counters: Counters,
    pub wall_ms: f64,
    pub outputs: T,
}

pub fn coeffs(f: &Poly) -> Vec<u64> {
    f.coeffs().to_vec()
}
