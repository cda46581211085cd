//! Writes the CSVs and gnuplot scripts for all five figures.
//!
//! cargo run --example figure_datasets -- out/

use std::path::PathBuf;

use ncbound::cli::write_figure;
use ncbound::sweep::{Figure, FigureOverrides};

fn main() -> ncbound::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    for fig in Figure::ALL {
        for path in write_figure(fig, &dir, &FigureOverrides::default())? {
            println!("{}", path.display());
        }
    }
    Ok(())
}
