use clap::{Args, Subcommand};

use extraspecial::dickson::{dickson_invariant, mui_poly, zeta};
use extraspecial::fplinalg::LinearForm;
use extraspecial::quillen::{class_chi, class_kappa, QuillenClass};
use extraspecial::symplectic::SymplecticSpace;
use extraspecial::{PolyRing, PrimeField};

use crate::config::Format;

#[derive(Debug, Args)]
pub struct ShowArgs {
    #[command(subcommand)]
    pub what: ShowWhat,
    /// Output format for classes.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum ShowWhat {
    /// The Dickson invariant `D_r` of `F_p^m`, in `x0..x{m-1}`.
    Dickson {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: i64,
    },
    /// The Mui polynomial of `F_p^m`, in `x0..x{m-1}` and `x{m}` for `X`.
    Mui {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long)]
        m: usize,
    },
    /// The symplectic invariant `ζ_i`, in `x0..x{2n-1}` with the `α` coordinates first.
    Zeta {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: u32,
    },
    /// The class `χ_{r,φ}`; `phi` lists the coefficients on `α_1..α_n, β_1..β_n`.
    Chi {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',')]
        phi: Vec<u32>,
    },
    /// The class `κ_{n,r}`.
    Kappa {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
}

fn space(p: u32, n: usize) -> extraspecial::Result<SymplecticSpace> {
    SymplecticSpace::new(PrimeField::new(p)?, n)
}

fn render_class(c: &QuillenClass, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&c.to_serialized()).expect("serializable"),
        Format::Text => {
            let mut out = format!("degree {}\n", c.degree());
            for (l, comp) in c.space().lagrangians().iter().zip(c.components()) {
                out.push_str(&format!("{:?}: {}\n", l.subspace().to_rows(), comp.to_text()));
            }
            out.pop();
            out
        }
    }
}

/// The requested object in canonical text form.
pub fn show(args: &ShowArgs) -> extraspecial::Result<String> {
    match &args.what {
        ShowWhat::Dickson { p, m, r } => {
            let ring = PolyRing::numbered(PrimeField::new(*p)?, "x", *m)?;
            let gens: Vec<_> = (0..*m).map(|i| ring.var(i)).collect();
            Ok(dickson_invariant(&ring, &gens, *r)?.to_text())
        }
        ShowWhat::Mui { p, m } => {
            let ring = PolyRing::numbered(PrimeField::new(*p)?, "x", m + 1)?;
            let gens: Vec<_> = (0..*m).map(|i| ring.var(i)).collect();
            Ok(mui_poly(&ring, &gens, &ring.var(*m))?.to_text())
        }
        ShowWhat::Zeta { p, n, i } => Ok(zeta(&space(*p, *n)?, *i)?.to_text()),
        ShowWhat::Chi { p, n, r, phi } => {
            let e = space(*p, *n)?;
            if phi.len() != e.dim() {
                return Err(extraspecial::Error::DimensionMismatch(format!(
                    "phi needs {} coefficients, got {}",
                    e.dim(),
                    phi.len()
                )));
            }
            let c = class_chi(&e, *r, &LinearForm::new(e.field(), phi))?;
            Ok(render_class(&c, args.format))
        }
        ShowWhat::Kappa { p, n, r } => Ok(render_class(&class_kappa(&space(*p, *n)?, *r)?, args.format)),
    }
}
