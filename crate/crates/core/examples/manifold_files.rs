//! Manifold files and command reports, as read and written by the binary.

use bordcat::cli::{cmd_cohomology, cmd_gauge, GaugeTarget, Input, ManifoldFile, Options, PairSpec, SkeletonSource, SkeletonSpec};
use bordcat::manifold::library;

fn main() -> bordcat::Result<()> {
    let dir = std::env::temp_dir().join("bordcat-example");
    std::fs::create_dir_all(&dir).map_err(|e| bordcat::Error::Invalid(e.to_string()))?;
    let path = dir.join("torus.json");
    let mut file = ManifoldFile::from_manifold(&library("torus2")?);
    file.skeleton = Some(SkeletonSpec { q: 0, source: SkeletonSource::Triangulation });
    file.save(&path)?;
    println!("wrote {} ({} simplices)", path.display(), file.simplices.len());

    let input = Input::resolve(path.to_str().expect("utf-8 temp path"))?;
    let opts = Options::default();
    print!("{}", cmd_cohomology(&input, 1, Some(PairSpec::Absolute), &opts, false)?.to_text());
    // Without an explicit pair the skeleton pair named in the file is used.
    print!("{}", cmd_cohomology(&input, 1, None, &opts, false)?.to_text());
    let report = cmd_gauge("trivial", &GaugeTarget::Closed(input), None, false, &opts)?;
    print!("{}", report.to_csv()?);
    Ok(())
}
