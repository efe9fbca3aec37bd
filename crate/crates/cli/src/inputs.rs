use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use ncg_core::algebra::{path_algebra, Quiver};
use ncg_core::linalg::Matrix;
use ncg_core::ncpoly::{parse_expr, NcPoly, Presentation};
use ncg_core::repmod::FdModule;
use ncg_core::spaces::{Comodule, Cover, SEPARATOR};
use ncg_core::Q;
use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Reads input files and remembers a content hash for each, keyed by file name.
#[derive(Default)]
pub struct Inputs {
    pub hashes: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let key = match path.parent().and_then(Path::file_name) {
            Some(dir) if self.hashes.contains_key(&name) => format!("{}/{}", dir.to_string_lossy(), name),
            _ => name,
        };
        self.hashes.insert(key, hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    pub fn quiver(&mut self, path: &Path) -> Result<Quiver> {
        let text = self.read(path)?;
        Quiver::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    /// An algebra file, or the path algebra of a `.quiver` file.
    pub fn algebra(&mut self, path: &Path) -> Result<Presentation> {
        if path.extension().is_some_and(|e| e == "quiver") {
            let q = self.quiver(path)?;
            return Ok(path_algebra(&q)?);
        }
        let text = self.read(path)?;
        let (p, warnings) = Presentation::parse(&text).with_context(|| format!("in {}", path.display()))?;
        self.notes.extend(warnings.into_iter().map(|w| format!("{}: {w}", path.display())));
        Ok(p)
    }

    pub fn module(&mut self, path: &Path) -> Result<FdModule> {
        #[derive(Deserialize)]
        struct ModuleFile {
            algebra: PathBuf,
            dim: usize,
            action: BTreeMap<String, Vec<Vec<Value>>>,
        }
        let text = self.read(path)?;
        let file: ModuleFile =
            serde_json::from_str(&text).with_context(|| format!("malformed module file {}", path.display()))?;
        let alg_path = path.parent().unwrap_or(Path::new(".")).join(&file.algebra);
        let alg = self.algebra(&alg_path)?;
        let mut action = vec![];
        for g in &alg.gens {
            let rows = file
                .action
                .get(&g.symbol)
                .ok_or_else(|| anyhow!("{}: no matrix for generator `{}`", path.display(), g.symbol))?;
            let rows = rows
                .iter()
                .map(|r| r.iter().map(rational).collect::<Result<Vec<Q>>>())
                .collect::<Result<Vec<_>>>()
                .with_context(|| format!("{}: generator `{}`", path.display(), g.symbol))?;
            let m = if rows.is_empty() {
                Matrix::zeros(file.dim, file.dim)
            } else {
                Matrix::from_rows(rows)?
            };
            action.push(m);
        }
        if let Some(extra) = file.action.keys().find(|k| alg.index_of(k).is_none()) {
            bail!("{}: `{extra}` is not a generator of {}", path.display(), alg.name);
        }
        FdModule::new(&alg, file.dim, action).with_context(|| format!("in {}", path.display()))
    }

    /// A cover bundle directory: `B.alg`, `M.mod` (`rel` lines with the
    /// separator `|`, optional `tensor N` and `max_len N`), and optionally
    /// `coalgebra.map` (`coproduct EXPR`, `counit EXPR`) and `s.map`
    /// (`kernel EXPR` lines).
    pub fn bundle(&mut self, dir: &Path, min_tensor: usize) -> Result<Cover> {
        let base = self.algebra(&dir.join("B.alg"))?;
        let mut syms = base.symbols();
        syms.push(SEPARATOR.to_string());
        let parse = |text: &str, file: &str, line: usize| {
            parse_expr(text, &syms).with_context(|| format!("{file} line {line}"))
        };
        let mut kernel = vec![];
        let mut tensor = min_tensor;
        let mut max_len = 12;
        for (i, (kw, rest)) in directives(&self.read(&dir.join("M.mod"))?) {
            match kw.as_str() {
                "rel" => kernel.push(parse(&rest, "M.mod", i)?),
                "tensor" => tensor = tensor.max(number(&rest, "M.mod", i)?),
                "max_len" => max_len = number(&rest, "M.mod", i)?,
                other => bail!("M.mod line {i}: unknown keyword `{other}`"),
            }
        }
        let sep = NcPoly::gen(base.ngens() as u16);
        let mut coproduct = sep.mul(&sep);
        let mut counit = NcPoly::one();
        let coalg = dir.join("coalgebra.map");
        if coalg.exists() {
            for (i, (kw, rest)) in directives(&self.read(&coalg)?) {
                match kw.as_str() {
                    "coproduct" => coproduct = parse(&rest, "coalgebra.map", i)?,
                    "counit" => counit = parse(&rest, "coalgebra.map", i)?,
                    other => bail!("coalgebra.map line {i}: unknown keyword `{other}`"),
                }
            }
        }
        let smap = dir.join("s.map");
        if smap.exists() {
            for (i, (kw, rest)) in directives(&self.read(&smap)?) {
                match kw.as_str() {
                    "kernel" => kernel.push(parse(&rest, "s.map", i)?),
                    other => bail!("s.map line {i}: unknown keyword `{other}`"),
                }
            }
        }
        Ok(Cover::new(&base, kernel, coproduct, counit, tensor, max_len)?)
    }

    /// Comodule file: `{"coaction": [["expr", ...], ...]}`.
    pub fn comodule(&mut self, path: &Path, cover: &Cover) -> Result<Comodule> {
        #[derive(Deserialize)]
        struct ComoduleFile {
            coaction: Vec<Vec<String>>,
        }
        let text = self.read(path)?;
        let file: ComoduleFile =
            serde_json::from_str(&text).with_context(|| format!("malformed comodule file {}", path.display()))?;
        let coaction = file
            .coaction
            .iter()
            .map(|row| row.iter().map(|e| cover.parse(e).map(|p| cover.nf(&p))).collect())
            .collect::<ncg_core::Result<Vec<Vec<NcPoly>>>>()
            .with_context(|| format!("in {}", path.display()))?;
        Ok(Comodule { coaction })
    }
}

fn directives(text: &str) -> Vec<(usize, (String, String))> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                return None;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            Some((i + 1, (kw.to_string(), rest.trim().to_string())))
        })
        .collect()
}

fn number(text: &str, file: &str, line: usize) -> Result<usize> {
    text.parse().with_context(|| format!("{file} line {line}: expected a number"))
}

/// A rational given as a JSON integer or as a string like `"-3/2"`.
pub fn rational(v: &Value) -> Result<Q> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(ncg_core::q)
            .ok_or_else(|| anyhow!("`{n}` is not an integer; write fractions as strings")),
        Value::String(s) => Q::from_str(s.trim()).map_err(|_| anyhow!("`{s}` is not a rational number")),
        other => bail!("`{other}` is not a rational number"),
    }
}
