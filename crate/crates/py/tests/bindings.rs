use std::ffi::CString;

use pyo3::prelude::*;

fn run(code: &str) -> PyResult<()> {
    Python::attach(|py| {
        let code = CString::new(code).unwrap();
        py.run(&code, None, None)
    })
}

#[test]
fn module_round_trip() {
    use fknot_py::fknot_py;
    pyo3::append_to_inittab!(fknot_py);
    Python::initialize();
    run(r#"
import fknot_py
d = fknot_py.parse("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]")
assert d.alexander() == [1, -1, 1]
c = d.count(3)
assert (c.delta_q, c.count) == (7, 7)
assert d.enumerate(2, cap=8).stable_count == 3
assert d.torsor(2, 1, group="gl2").group_order == 6
assert repr(d).startswith("Diagram(")
try:
    fknot_py.parse("X[1,4,2,5] X[3,6,4,1]")
    raise SystemExit("inconsistent diagram accepted")
except fknot_py.FknotError as e:
    assert "InconsistentDiagram" in str(e)
"#)
    .unwrap();
}
