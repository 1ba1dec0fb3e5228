//! The shipped figure problems `fig1` to `fig6`.

use crate::error::{Error, Result};
use crate::problem::ProblemFile;
use crate::render::Scene;

pub const FIGURES: [(&str, &str); 6] = [
    ("fig1", include_str!("../figures/fig1.json")),
    ("fig2", include_str!("../figures/fig2.json")),
    ("fig3", include_str!("../figures/fig3.json")),
    ("fig4", include_str!("../figures/fig4.json")),
    ("fig5", include_str!("../figures/fig5.json")),
    ("fig6", include_str!("../figures/fig6.json")),
];

pub fn figure(name: &str) -> Result<ProblemFile> {
    let (_, text) = FIGURES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Parse(format!("no figure named {name:?}")))?;
    ProblemFile::parse(text)
}

pub fn figure_scene(name: &str) -> Result<Scene> {
    Scene::from_problem(&figure(name)?.validate()?)
}

pub fn render_figure(name: &str) -> Result<String> {
    Ok(figure_scene(name)?.to_svg())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_figures_render() {
        for (name, _) in FIGURES {
            let svg = render_figure(name).unwrap();
            assert!(svg.starts_with("<?xml") && svg.ends_with("</svg>\n"), "{name}");
        }
        assert!(figure("fig7").is_err());
    }
}
