use pyo3::prelude::*;

#[pymodule]
fn promptgraph_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
