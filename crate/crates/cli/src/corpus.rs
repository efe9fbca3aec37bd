//! Golden-file regression runner. A manifest lists invocations and the exit
//! code each must produce; the JSON report of each is compared byte-for-byte
//! with `golden/<name>.json` next to the manifest, after checking that two
//! runs agree and that the report holds no floating-point numbers.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::commands::Done;
use crate::report::{contains_float, RunReport};
use crate::ExitStatus;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub entries: Vec<Entry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub name: String,
    pub args: Vec<String>,
    #[serde(default)]
    pub exit: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let m: Manifest = serde_json::from_str(&text).with_context(|| format!("manifest {} is malformed", path.display()))?;
    for e in &m.entries {
        if e.name.is_empty() || !e.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            bail!("manifest entry name `{}` must be nonempty and use [A-Za-z0-9_-]", e.name);
        }
        if e.args.first().is_some_and(|a| a == "corpus") {
            bail!("manifest entry `{}` may not run the corpus command", e.name);
        }
    }
    Ok(m)
}

fn resolve(dir: &Path, args: &[String]) -> Vec<String> {
    let mut out = vec!["ncg".to_string()];
    for a in args {
        let p = dir.join(a);
        if !a.starts_with('-') && p.exists() {
            out.push(p.to_string_lossy().into_owned());
        } else {
            out.push(a.clone());
        }
    }
    out.push("--emit".into());
    out.push("json".into());
    out
}

fn first_difference(a: &str, b: &str) -> String {
    for (i, (x, y)) in a.lines().zip(b.lines()).enumerate() {
        if x != y {
            return format!("line {}: expected `{}`, got `{}`", i + 1, x.trim(), y.trim());
        }
    }
    format!("expected {} lines, got {}", a.lines().count(), b.lines().count())
}

/// Run every entry of the manifest; with `bless`, write the golden files.
pub fn run_manifest(manifest: &Path, bless: bool) -> Result<Vec<EntryResult>> {
    let m = load_manifest(manifest)?;
    let dir = manifest.parent().unwrap_or(Path::new(".")).to_path_buf();
    let golden_dir: PathBuf = dir.join("golden");
    let mut results = vec![];
    for e in &m.entries {
        let args = resolve(&dir, &e.args);
        let first = crate::run(&args);
        let second = crate::run(&args);
        let golden_path = golden_dir.join(format!("{}.json", e.name));
        let fail = |detail: String| EntryResult {
            name: e.name.clone(),
            passed: false,
            detail,
        };
        if first != second {
            results.push(fail("two runs produced different output".into()));
            continue;
        }
        if first.code() != e.exit {
            results.push(fail(format!(
                "exit code {} (expected {}): {}",
                first.code(),
                e.exit,
                first.stderr.trim()
            )));
            continue;
        }
        let parsed: Option<Value> = serde_json::from_str(&first.stdout).ok();
        if first.status != ExitStatus::InputError {
            match &parsed {
                None => {
                    results.push(fail("report is not valid JSON".into()));
                    continue;
                }
                Some(v) if contains_float(v) => {
                    results.push(fail("report contains a floating-point number".into()));
                    continue;
                }
                _ => {}
            }
        }
        if bless {
            fs::create_dir_all(&golden_dir)?;
            fs::write(&golden_path, &first.stdout)?;
            results.push(EntryResult {
                name: e.name.clone(),
                passed: true,
                detail: "blessed".into(),
            });
            continue;
        }
        let expected = match fs::read_to_string(&golden_path) {
            Ok(s) => s,
            Err(_) => {
                results.push(fail(format!("missing golden file {}", golden_path.display())));
                continue;
            }
        };
        if expected == first.stdout {
            results.push(EntryResult {
                name: e.name.clone(),
                passed: true,
                detail: String::new(),
            });
        } else {
            results.push(fail(first_difference(&expected, &first.stdout)));
        }
    }
    Ok(results)
}

pub(crate) fn command(manifest: &Path, bless: bool) -> Result<Done> {
    let results = run_manifest(manifest, bless)?;
    let failed = results.iter().filter(|r| !r.passed).count();
    let mut report = RunReport::new("corpus");
    report.parameters = json!({ "bless": bless });
    report.results = json!({
        "entries": results.iter().map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail })).collect::<Vec<_>>(),
        "passed": results.len() - failed,
        "failed": failed,
    });
    let text = results
        .iter()
        .map(|r| {
            if r.passed {
                format!("PASS {}\n", r.name)
            } else {
                format!("FAIL {}: {}\n", r.name, r.detail)
            }
        })
        .collect::<String>()
        + &format!("{} passed, {} failed\n", results.len() - failed, failed);
    Ok(Done {
        report,
        text,
        status: if failed == 0 { ExitStatus::Ok } else { ExitStatus::InputError },
        notes: vec![],
    })
}
