//! Exhaustive orientation sweep written as JSON lines.
//!
//! Records are computed on a pool of `jobs` threads, one size `n` at a time,
//! and written by a single writer in `(n, word)` order. With `resume`,
//! orientations already in the output file are skipped and new records are
//! appended.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;

use quiverstab::sweep::{orientations, sweep_record, SweepRecord};
use rayon::prelude::*;
use serde_json::json;

use crate::commands::{CliError, Outcome};

pub struct Options {
    pub max_n: usize,
    pub out: Option<PathBuf>,
    pub jobs: usize,
    pub resume: bool,
    pub quotient_symmetry: bool,
    pub timings: bool,
}

/// Records already present in `path`, keyed by orientation word.
///
/// A trailing partial line left by an interrupted run is cut off.
fn load_existing(path: &PathBuf) -> Result<HashMap<String, SweepRecord>, CliError> {
    let mut file = match OpenOptions::new().read(true).write(true).open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(HashMap::new()),
        Err(e) => return Err(e.into()),
    };
    let mut done = HashMap::new();
    let mut good_len = 0u64;
    let mut reader = BufReader::new(&mut file);
    let mut line = String::new();
    loop {
        line.clear();
        let read = reader.read_line(&mut line)?;
        if read == 0 || !line.ends_with('\n') {
            break;
        }
        let record: SweepRecord = serde_json::from_str(line.trim_end())
            .map_err(|e| CliError::Io(format!("{}: unreadable record: {e}", path.display())))?;
        good_len += read as u64;
        done.insert(record.orientation.clone(), record);
    }
    drop(reader);
    file.set_len(good_len)?;
    Ok(done)
}

pub fn run(opts: &Options) -> Result<Outcome, CliError> {
    if opts.max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    if opts.max_n > 30 {
        return Err(CliError::Usage("--max-n is limited to 30".into()));
    }
    if opts.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;

    let existing = match (&opts.out, opts.resume) {
        (Some(path), true) => load_existing(path)?,
        _ => HashMap::new(),
    };
    let mut sink: Box<dyn Write> = match &opts.out {
        Some(path) => {
            let file = if opts.resume {
                OpenOptions::new().create(true).append(true).open(path)
            } else {
                File::create(path)
            };
            Box::new(file.map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?)
        }
        None => Box::new(io::stdout().lock()),
    };

    let mut total = 0usize;
    let mut failing = Vec::new();
    let all = orientations(opts.max_n, opts.quotient_symmetry);
    for n in 1..=opts.max_n {
        let todo: Vec<_> = all.iter().filter(|q| q.n() == n).collect();
        let fresh: Vec<Option<SweepRecord>> = pool.install(|| {
            todo.par_iter()
                .map(|q| match existing.get(&q.word()) {
                    Some(_) => Ok(None),
                    None => sweep_record(q, opts.timings).map(Some),
                })
                .collect::<quiverstab::Result<_>>()
        })?;
        for (q, rec) in todo.iter().zip(fresh) {
            let rec = match rec {
                Some(r) => {
                    writeln!(
                        sink,
                        "{}",
                        serde_json::to_string(&r).expect("record serialises")
                    )?;
                    r
                }
                None => existing[&q.word()].clone(),
            };
            total += 1;
            if !rec.all_stable || !rec.intrinsic_in_cone {
                failing.push(rec.orientation);
            }
        }
        sink.flush()?;
    }

    let summary = json!({
        "max_n": opts.max_n,
        "records": total,
        "failures": failing,
    });
    eprintln!("{summary}");
    Ok(Outcome {
        payload: None,
        verified: failing.is_empty(),
    })
}
