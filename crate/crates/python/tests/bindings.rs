use std::ffi::CString;

use dblcat_py::dblcat_py;
use pyo3::prelude::*;

fn run(code: &str) -> PyResult<()> {
    pyo3::append_to_inittab!(dblcat_py);
    Python::initialize();
    Python::attach(|py| py.run(&CString::new(code).unwrap(), None, None))
}

#[test]
fn module_works_from_python() {
    run(r#"
import dblcat_py as d
z2 = d.Presentation.load("z2")
assert z2.validate() == []
assert z2.equal("i[-1] . i[-1]", "1") == "Equal"
assert z2.equal("-1 . i[-1]", "i[-1] . -1", budget=12) == "Distinct(12)"
assert z2.level("(-1 . i[-1]) * i[-1]") == 2
classes, truncated = z2.enumerate("id_a,id_a,1,1", 8, 1)
assert [c[0] for c in classes] == ["-1", "1", "i[-1] . -1 . i[-1]", "-1 . i[-1] . -1 . i[-1]"]
q = d.Quotient.load("z2-abelian")
assert [c[0] for c in q.globular_classes()] == ["1", "-1"]
assert d.Quotient(z2, []).check_verticalization() != []
assert d.Projection(q).project("i[-1] . -1") == "-1 . i[-1]"
assert d.Functor.load("collapse").map("-1") == "1"
try:
    d.Presentation.from_json("{}")
    raise AssertionError("accepted")
except d.DblcatError:
    pass
"#)
    .unwrap();
}
