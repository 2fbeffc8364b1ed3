//! The `regtet` command line.
//!
//! Every subcommand writes one JSON object per line, tagged by `kind`, in
//! canonical sorted order. `--format csv` prints only the count records as
//! `what,at,value` rows.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::eisenstein::{omega, primitive_triples, zeta, EisensteinPair, Generator};
use crate::error::{Error, Result};
use crate::numtheory::{solve_three_d2, NormalQuadruple};
use crate::oracle::{
    brute_t0_default, brute_tetrahedra_grid, brute_triangles_grid, compare, compare_bfile,
    parse_bfile, GridOptions, Offset,
};
use crate::point::Point;
use crate::tetra::{
    complete_tetrahedron, enumerate_t0_detailed, face_normals, verify_orthogonality,
    LatticeTetrahedron, Provenance,
};
use crate::triangle::{coeff_matrix, triangle_points, verify_equilateral};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "REGTET_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "regtet",
    version,
    about = "Regular tetrahedra and equilateral triangles in Z^3"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Tetra,
    Triangle,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Primitive solutions of a^2 + b^2 + c^2 = 3d^2 for an odd d.
    Solve3d2 {
        #[arg(long)]
        d: u64,
    },
    /// All (m, n) with m^2 - mn + n^2 = k^2.
    Omega {
        #[arg(long)]
        k: u64,
    },
    /// Primitive Eisenstein triples with k <= kmax.
    Triples {
        #[arg(long)]
        kmax: u64,
    },
    /// The lattice triangle O, P(m, n), Q(m, n) in the plane of a quadruple.
    Triangles {
        #[arg(long, value_parser = parse_quad)]
        quad: NormalQuadruple,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Complete the triangle for (m, n) to regular tetrahedra.
    Complete {
        #[arg(long, value_parser = parse_quad)]
        quad: NormalQuadruple,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Also emit the outward face normals of each tetrahedron.
        #[arg(long)]
        with_normals: bool,
    },
    /// All regular tetrahedra of side ell*sqrt(2) with a vertex at the origin.
    EnumerateT0 {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        with_normals: bool,
    },
    /// Brute-force counts on the grids {0..i}^3 for i = 0..=n.
    GridCount {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        shape: Shape,
        /// OEIS b-file to compare against.
        #[arg(long)]
        bfile: Option<PathBuf>,
        /// Scan grids larger than the default guard.
        #[arg(long)]
        allow_large: bool,
    },
    /// Compare the parametrized enumeration with the brute-force search.
    OracleCompare {
        #[arg(long)]
        ell: u64,
    },
    /// Re-verify every record in a file produced by this tool.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
}

fn parse_quad(s: &str) -> std::result::Result<NormalQuadruple, String> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let [a, b, c, d] = parts[..] else {
        return Err(format!("expected a,b,c,d, got {} values", parts.len()));
    };
    NormalQuadruple::new(a, b, c, d).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleProvenance {
    pub d: i64,
    pub r: i64,
    pub s: i64,
    pub m: i64,
    pub n: i64,
}

/// One line of output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum OutputRecord {
    Quadruple {
        #[serde(flatten)]
        quad: NormalQuadruple,
    },
    Pair {
        m: i64,
        n: i64,
        zeta: i64,
    },
    Triple {
        m: i64,
        n: i64,
        k: i64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        generator: Option<Generator>,
    },
    Triangle {
        vertices: [Point; 3],
        side_sq: i64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        provenance: Option<TriangleProvenance>,
    },
    Tetrahedron {
        vertices: [Point; 4],
        side_sq: i64,
        ell: i64,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        provenance: Option<Provenance>,
    },
    NormalSet {
        vertices: [Point; 4],
        faces: [NormalQuadruple; 4],
        orthogonal: bool,
    },
    Count {
        what: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        at: Option<u64>,
        value: u64,
    },
    Diff {
        what: String,
        missing_from_parametrized: Vec<[Point; 4]>,
        extra_in_parametrized: Vec<[Point; 4]>,
    },
    Bfile {
        what: String,
        offset: Offset,
        convention: String,
        compared: usize,
        mismatches: Vec<(u64, u64, u64)>,
        matches: bool,
    },
}

impl OutputRecord {
    fn tetrahedron(t: &LatticeTetrahedron, provenance: Option<Provenance>) -> Self {
        OutputRecord::Tetrahedron {
            vertices: t.vertices,
            side_sq: t.side_sq,
            ell: t.ell,
            provenance,
        }
    }

    fn count(what: &str, at: Option<u64>, value: u64) -> Self {
        OutputRecord::Count {
            what: what.into(),
            at,
            value,
        }
    }

    fn normal_set(t: &LatticeTetrahedron) -> Result<Self> {
        let f = face_normals(t)?;
        Ok(OutputRecord::NormalSet {
            vertices: t.vertices,
            faces: f.faces,
            orthogonal: verify_orthogonality(&f),
        })
    }

    /// Re-checks a record read back from a file.
    pub fn verify(&self) -> Result<()> {
        match self {
            OutputRecord::Quadruple { quad } => quad.validate(),
            OutputRecord::Pair { m, n, zeta: z } => {
                let actual = zeta(EisensteinPair::new(*m, *n))?;
                if actual != *z {
                    return Err(Error::Verification(format!(
                        "zeta({m}, {n}) = {actual}, record says {z}"
                    )));
                }
                Ok(())
            }
            OutputRecord::Triple { m, n, k, .. } => {
                let z = zeta(EisensteinPair::new(*m, *n))?;
                if Some(z) != k.checked_mul(*k) {
                    return Err(Error::Verification(format!(
                        "zeta({m}, {n}) = {z} != {k}^2"
                    )));
                }
                Ok(())
            }
            OutputRecord::Triangle {
                vertices: [o, p, q],
                side_sq,
                ..
            } => {
                let s = verify_equilateral(p.checked_sub(*o)?, q.checked_sub(*o)?)?;
                if s != *side_sq {
                    return Err(Error::Verification(format!(
                        "triangle side^2 is {s}, record says {side_sq}"
                    )));
                }
                Ok(())
            }
            OutputRecord::Tetrahedron {
                vertices,
                side_sq,
                ell,
                ..
            } => {
                let t = LatticeTetrahedron::new(*vertices)?;
                if t.side_sq != *side_sq || t.ell != *ell {
                    return Err(Error::Verification(format!(
                        "tetrahedron has side^2 {} and ell {}, record says {side_sq} and {ell}",
                        t.side_sq, t.ell
                    )));
                }
                if t.vertices != *vertices {
                    return Err(Error::Verification(
                        "tetrahedron vertices are not in canonical order".into(),
                    ));
                }
                Ok(())
            }
            OutputRecord::NormalSet {
                vertices,
                faces,
                orthogonal,
            } => {
                let t = LatticeTetrahedron::new(*vertices)?;
                let f = face_normals(&t)?;
                if f.faces != *faces || verify_orthogonality(&f) != *orthogonal {
                    return Err(Error::Verification(
                        "normal set does not match its tetrahedron".into(),
                    ));
                }
                Ok(())
            }
            OutputRecord::Count { .. } | OutputRecord::Diff { .. } | OutputRecord::Bfile { .. } => {
                Ok(())
            }
        }
    }
}

struct Emitter<'a> {
    out: &'a mut dyn Write,
    format: Format,
    csv_header: bool,
}

impl Emitter<'_> {
    fn emit(&mut self, rec: &OutputRecord) -> Result<()> {
        let io = |e: std::io::Error| Error::Internal(format!("write failed: {e}"));
        match self.format {
            Format::Json => {
                let line =
                    serde_json::to_string(rec).map_err(|e| Error::Internal(e.to_string()))?;
                writeln!(self.out, "{line}").map_err(io)
            }
            Format::Csv => {
                if let OutputRecord::Count { what, at, value } = rec {
                    if !self.csv_header {
                        writeln!(self.out, "what,at,value").map_err(io)?;
                        self.csv_header = true;
                    }
                    let at = at.map(|a| a.to_string()).unwrap_or_default();
                    writeln!(self.out, "{what},{at},{value}").map_err(io)?;
                }
                Ok(())
            }
        }
    }
}

/// Why a run ended unsuccessfully after its output was written.
struct Failed(String);

fn execute(cmd: Command, em: &mut Emitter<'_>) -> Result<std::result::Result<(), Failed>> {
    match cmd {
        Command::Solve3d2 { d } => {
            let quads = solve_three_d2(d)?;
            for quad in &quads {
                em.emit(&OutputRecord::Quadruple { quad: *quad })?;
            }
            em.emit(&OutputRecord::count(
                "quadruples",
                Some(d),
                quads.len() as u64,
            ))?;
        }
        Command::Omega { k } => {
            let set = omega(k)?;
            for p in &set {
                em.emit(&OutputRecord::Pair {
                    m: p.m,
                    n: p.n,
                    zeta: zeta(*p)?,
                })?;
            }
            em.emit(&OutputRecord::count("omega", Some(k), set.len() as u64))?;
        }
        Command::Triples { kmax } => {
            let triples = primitive_triples(kmax)?;
            for t in &triples {
                em.emit(&OutputRecord::Triple {
                    m: t.m,
                    n: t.n,
                    k: t.k,
                    generator: t.generator,
                })?;
            }
            em.emit(&OutputRecord::count(
                "triples",
                Some(kmax),
                triples.len() as u64,
            ))?;
        }
        Command::Triangles { quad, m, n } => {
            let cm = coeff_matrix(quad)?;
            let t = triangle_points(&cm, m, n)?;
            em.emit(&OutputRecord::Triangle {
                vertices: [t.vertex_o, t.vertex_p, t.vertex_q],
                side_sq: t.side_sq,
                provenance: Some(TriangleProvenance {
                    d: quad.d,
                    r: cm.rs.r,
                    s: cm.rs.s,
                    m,
                    n,
                }),
            })?;
        }
        Command::Complete {
            quad,
            m,
            n,
            with_normals,
        } => {
            let cm = coeff_matrix(quad)?;
            let done = complete_tetrahedron(&cm, m, n)?;
            for c in &done {
                em.emit(&OutputRecord::tetrahedron(&c.tetra, Some(c.provenance)))?;
                if with_normals {
                    em.emit(&OutputRecord::normal_set(&c.tetra)?)?;
                }
            }
            em.emit(&OutputRecord::count("completions", None, done.len() as u64))?;
        }
        Command::EnumerateT0 {
            ell,
            count_only,
            with_normals,
        } => {
            let all = enumerate_t0_detailed(ell)?;
            if !count_only {
                for (t, p) in &all {
                    em.emit(&OutputRecord::tetrahedron(t, Some(*p)))?;
                    if with_normals {
                        em.emit(&OutputRecord::normal_set(t)?)?;
                    }
                }
            }
            em.emit(&OutputRecord::count("TO", Some(ell), all.len() as u64))?;
        }
        Command::GridCount {
            n,
            shape,
            bfile,
            allow_large,
        } => {
            let opts = GridOptions {
                allow_large,
                ..GridOptions::default()
            };
            let what = match shape {
                Shape::Tetra => "grid-tetrahedra",
                Shape::Triangle => "grid-triangles",
            };
            let mut counts = BTreeMap::new();
            for i in 0..=n {
                let c = match shape {
                    Shape::Tetra => brute_tetrahedra_grid(i, &opts)?.count,
                    Shape::Triangle => brute_triangles_grid(i, &opts)?.count,
                };
                counts.insert(i, c);
                em.emit(&OutputRecord::count(what, Some(i), c))?;
            }
            if let Some(path) = bfile {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let reference = parse_bfile(&text)?;
                let reports = compare_bfile(&counts, &reference);
                for r in &reports {
                    em.emit(&OutputRecord::Bfile {
                        what: what.into(),
                        offset: r.offset,
                        convention: r.offset.to_string(),
                        compared: r.compared,
                        mismatches: r.mismatches.clone(),
                        matches: r.matches(),
                    })?;
                }
                if !reports.iter().any(|r| r.matches()) {
                    return Ok(Err(Failed(format!(
                        "{}: no offset convention matches the computed counts",
                        path.display()
                    ))));
                }
            }
        }
        Command::OracleCompare { ell } => {
            let param: std::collections::BTreeSet<LatticeTetrahedron> =
                enumerate_t0_detailed(ell)?.into_keys().collect();
            let brute = brute_t0_default(ell)?;
            let diff = compare(&param, &brute);
            em.emit(&OutputRecord::count("TO", Some(ell), param.len() as u64))?;
            em.emit(&OutputRecord::count(
                "TO-brute",
                Some(ell),
                brute.len() as u64,
            ))?;
            let empty = diff.is_empty();
            em.emit(&OutputRecord::Diff {
                what: format!("T0({ell})"),
                missing_from_parametrized: diff
                    .missing_from_parametrized
                    .iter()
                    .map(|t| t.vertices)
                    .collect(),
                extra_in_parametrized: diff
                    .extra_in_parametrized
                    .iter()
                    .map(|t| t.vertices)
                    .collect(),
            })?;
            if !empty {
                return Ok(Err(Failed(format!(
                    "parametrized and brute-force T0({ell}) differ"
                ))));
            }
        }
        Command::Verify { file } => {
            let fh = std::fs::File::open(&file)
                .map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
            let mut checked = 0u64;
            for (i, line) in BufReader::new(fh).lines().enumerate() {
                let line = line.map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
                if line.trim().is_empty() {
                    continue;
                }
                let rec: OutputRecord = serde_json::from_str(&line)
                    .map_err(|e| Error::Parse(format!("{}:{}: {e}", file.display(), i + 1)))?;
                rec.verify().map_err(|e| {
                    Error::Verification(format!("{}:{}: {e}", file.display(), i + 1))
                })?;
                checked += 1;
            }
            em.emit(&OutputRecord::count("verified", None, checked))?;
        }
    }
    Ok(Ok(()))
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{THREADS_ENV}={raw:?} is not a thread count")))?;
    // a pool may already exist when run() is called twice in one process
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Runs the command line and returns the process exit status: 0 on success,
/// 1 on a domain error or nonempty diff, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("regtet: {e}");
        return 2;
    }
    let mut em = Emitter {
        out,
        format: cli.format,
        csv_header: false,
    };
    match execute(cli.command, &mut em) {
        Ok(Ok(())) => 0,
        Ok(Err(Failed(msg))) => {
            eprintln!("regtet: {msg}");
            1
        }
        Err(e) => {
            eprintln!("regtet: {e}");
            1
        }
    }
}
