//! Command-line front end: build open-book documents, run the fibre-sum
//! constructions on them, and print invariants or verification reports.
//!
//! Exit codes: 0 on success, 1 on input or validation errors, 2 when a
//! verification suite fails. All output is canonical JSON, so identical
//! inputs give byte-identical outputs.

use std::io::Read as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;

use obk::braid::Braid;
use obk::doc::Document;
use obk::invariants;
use obk::openbook::{convex_bundle_sum, multi_section_sum, t3_open_book, OpenBook};
use obk::{Error, Result};

#[derive(Parser)]
#[command(
    name = "obk",
    version,
    about = "Fibre-sum constructions on abstract open books"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a preset, the torus-bundle family `t3`, or a document file.
    Build {
        /// Preset name (s3_disc, s3_hopf_plus, s3_hopf_minus, s1s2,
        /// two_discs), the family name `t3`, or a path to a document.
        source: String,
        /// Number of annulus pairs in the `t3` family.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Binding sum of two boundary circles of one document.
    Bindsum {
        #[arg(long)]
        k0: String,
        #[arg(long)]
        k1: String,
        /// Relative framing of the sum.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i64,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fibre sum of two disc open books along braided multi-sections.
    Multisum {
        /// Strand count of both braids.
        #[arg(long)]
        n: usize,
        /// Front braid word, e.g. "s1 s2^-1".
        #[arg(long)]
        k0: String,
        /// Back braid word.
        #[arg(long)]
        k1: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add a 1-handle and one boundary-parallel twist.
    Stabilize {
        /// Boundary label at which the handle is attached.
        #[arg(long)]
        at: String,
        /// Second boundary label; omit (or repeat `at`) to split an ear.
        #[arg(long)]
        to: Option<String>,
        /// Twist sign, +1 or -1.
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        sign: i64,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two trivial binding sums at one circle (a full Lutz twist).
    Lutz {
        #[arg(long)]
        k: String,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Binding-sum a two-annulus chain onto two circles.
    Giroux {
        #[arg(long)]
        k0: String,
        #[arg(long)]
        k1: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sum a positive and a negative half along paired binding labels.
    Convexsum {
        /// Document of the negative half.
        #[arg(long)]
        neg: PathBuf,
        /// Comma-separated label pairs "pos:neg,pos:neg,...".
        #[arg(long)]
        pairs: String,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print Betti number, torsion, and page data of a document.
    Invariants {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named check suite: presets, relations, or sums.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => Ok(std::fs::read_to_string(p)?),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Reads a document, applies `f`, and writes the result, carrying `meta`
/// through unchanged.
fn pipe(
    input: &Option<PathBuf>,
    out: &Option<PathBuf>,
    f: impl FnOnce(&OpenBook) -> Result<OpenBook>,
) -> Result<()> {
    let doc = Document::parse(&read_input(input)?)?;
    let ob = doc.to_open_book()?;
    let mut result = Document::from_open_book(&f(&ob)?);
    result.meta = doc.meta;
    write_output(out, &result.to_json())
}

fn build(source: &str, n: usize, out: &Option<PathBuf>) -> Result<()> {
    let known_preset = matches!(
        source,
        "s3_disc" | "s3_hopf_plus" | "s3_hopf_minus" | "s1s2" | "two_discs"
    );
    if known_preset {
        let ob = OpenBook::preset(source)?;
        return write_output(out, &Document::from_open_book(&ob).to_json());
    }
    if source == "t3" {
        let ob = t3_open_book(n)?;
        return write_output(out, &Document::from_open_book(&ob).to_json());
    }
    if std::path::Path::new(source).exists() {
        let doc = Document::parse(&std::fs::read_to_string(source)?)?;
        let mut canon = Document::from_open_book(&doc.to_open_book()?);
        canon.meta = doc.meta;
        return write_output(out, &canon.to_json());
    }
    Err(Error::Parse(format!("unknown preset `{source}`")))
}

fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for part in text.split(',').filter(|p| !p.trim().is_empty()) {
        let (a, b) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("pair `{part}` is not of the form a:b")))?;
        pairs.push((a.trim().to_owned(), b.trim().to_owned()));
    }
    Ok(pairs)
}

fn invariants_json(ob: &OpenBook) -> Result<String> {
    let (b1, torsion) = invariants::betti_and_torsion(ob)?;
    let torsion: Vec<serde_json::Value> = torsion
        .iter()
        .map(|t| match t.to_u64() {
            Some(v) => serde_json::json!(v),
            None => serde_json::json!(t.to_string()),
        })
        .collect();
    let page = ob.page();
    let value = serde_json::json!({
        "b1": b1,
        "boundary_count": page.boundary_count(),
        "chi": page.euler_characteristic(),
        "components": page.components().len(),
        "torsion": torsion,
    });
    let mut s = serde_json::to_string_pretty(&value).expect("invariants serialize");
    s.push('\n');
    Ok(s)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Build { source, n, out } => {
            build(&source, n, &out)?;
            Ok(0)
        }
        Command::Bindsum {
            k0,
            k1,
            m,
            input,
            out,
        } => {
            pipe(&input, &out, |ob| ob.binding_sum(&k0, &k1, m))?;
            Ok(0)
        }
        Command::Multisum { n, k0, k1, out } => {
            let front = Braid::parse(n, &k0)?;
            let back = Braid::parse(n, &k1)?;
            let ob = multi_section_sum(&front, &back)?;
            write_output(&out, &Document::from_open_book(&ob).to_json())?;
            Ok(0)
        }
        Command::Stabilize {
            at,
            to,
            sign,
            input,
            out,
        } => {
            pipe(&input, &out, |ob| ob.stabilize(&at, to.as_deref(), sign))?;
            Ok(0)
        }
        Command::Lutz { k, input, out } => {
            pipe(&input, &out, |ob| ob.lutz_full(&k))?;
            Ok(0)
        }
        Command::Giroux {
            k0,
            k1,
            m,
            n,
            input,
            out,
        } => {
            pipe(&input, &out, |ob| ob.giroux_gadget(&k0, &k1, m, n))?;
            Ok(0)
        }
        Command::Convexsum {
            neg,
            pairs,
            input,
            out,
        } => {
            let pairs = parse_pairs(&pairs)?;
            let negative = Document::parse(&std::fs::read_to_string(&neg)?)?.to_open_book()?;
            pipe(&input, &out, |ob| convex_bundle_sum(ob, &negative, &pairs))?;
            Ok(0)
        }
        Command::Invariants { input, out } => {
            let doc = Document::parse(&read_input(&input)?)?;
            let ob = doc.to_open_book()?;
            write_output(&out, &invariants_json(&ob)?)?;
            Ok(0)
        }
        Command::Verify { suite } => {
            let report = invariants::named_suite(&suite)?;
            print!("{}", report.to_json());
            Ok(if report.pass { 0 } else { 2 })
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
