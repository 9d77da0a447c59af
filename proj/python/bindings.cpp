#include "tfm/analysis.hpp"
#include "tfm/sampling.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace tfm;

namespace {

py::int_ to_py(const Natural& n) { return py::int_(py::str(n.str())); }

Natural natural(const py::int_& v)
{
    const auto s = py::str(v).cast<std::string>();
    if (s.front() == '-')
        throw py::value_error("expected a nonnegative integer");
    return Natural(s);
}

Ordinal as_ordinal(const py::object& o)
{
    if (py::isinstance<Ordinal>(o))
        return o.cast<Ordinal>();
    if (py::isinstance<py::int_>(o))
        return Ordinal(natural(o.cast<py::int_>()));
    if (py::isinstance<py::str>(o))
        return parse_ordinal(o.cast<std::string>());
    throw py::type_error("expected an Ordinal, int or str");
}

Program as_program(const py::object& o)
{
    if (py::isinstance<Program>(o))
        return o.cast<Program>();
    const auto text = o.cast<std::string>();
    return parse_program(text, detect_dialect(text));
}

py::object output_to_py(const MachineOutput& out)
{
    if (const auto* n = std::get_if<Natural>(&out))
        return to_py(*n);
    return py::str(describe_output(out));
}

py::dict outcome_dict(const RunOutcome& o, const Program& p)
{
    py::dict d;
    d["outcome"] = std::string(outcome_kind(o));
    if (const auto* h = std::get_if<Halted>(&o)) {
        d["time"] = h->time;
        d["output"] = output_to_py(h->output);
    } else if (const auto* v = std::get_if<Diverges>(&o)) {
        d["certificate"] = v->certificate.summary();
        d["recurring"] = describe_config(v->recurring_config, p);
        d["output_changes"] = v->output_changes;
    } else if (const auto* u = std::get_if<Undefined>(&o)) {
        d["time"] = u->time;
        d["register"] = u->reg;
    } else {
        const auto& b = std::get<BudgetExceeded>(o);
        d["time"] = b.time_reached;
        d["snapshot"] = describe_config(b.snapshot, p);
    }
    return d;
}

Budget budget(const py::object& max_time, std::uint64_t max_events)
{
    Budget b{as_ordinal(max_time), max_events};
    b.validate();
    return b;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Transfinite machine simulator";

    py::register_exception<ProgramError>(m, "ProgramError", PyExc_ValueError);
    py::register_exception<DialectMismatch>(m, "DialectMismatch", PyExc_ValueError);
    py::register_exception<OrdinalParseError>(m, "OrdinalParseError", PyExc_ValueError);

    py::class_<Ordinal>(m, "Ordinal")
        .def(py::init([](const py::object& o) { return as_ordinal(o); }), py::arg("value") = 0)
        .def_static("omega", &Ordinal::omega)
        .def("is_finite", &Ordinal::is_finite)
        .def("is_limit", &Ordinal::is_limit)
        .def("finite_part", [](const Ordinal& a) { return to_py(a.finite_part()); })
        .def("limit_part", &Ordinal::limit_part)
        .def("__str__", [](const Ordinal& a) { return format_ordinal(a); })
        .def("__repr__", [](const Ordinal& a) { return "Ordinal('" + format_ordinal(a) + "')"; })
        .def("__hash__", [](const Ordinal& a) { return a.hash(); })
        .def("__eq__", [](const Ordinal& a, const py::object& b) { return a == as_ordinal(b); })
        .def("__lt__", [](const Ordinal& a, const py::object& b) { return a < as_ordinal(b); })
        .def("__le__", [](const Ordinal& a, const py::object& b) { return a <= as_ordinal(b); })
        .def("__gt__", [](const Ordinal& a, const py::object& b) { return a > as_ordinal(b); })
        .def("__ge__", [](const Ordinal& a, const py::object& b) { return a >= as_ordinal(b); })
        .def("__add__", [](const Ordinal& a, const py::object& b) { return add(a, as_ordinal(b)); })
        .def("__radd__", [](const Ordinal& a, const py::object& b) { return add(as_ordinal(b), a); })
        .def("__mul__", [](const Ordinal& a, const py::object& b) { return mul(a, as_ordinal(b)); })
        .def("__rmul__", [](const Ordinal& a, const py::object& b) { return mul(as_ordinal(b), a); })
        .def("__pow__", [](const Ordinal& a, const py::object& b) { return pow(a, as_ordinal(b)); });

    m.def("sub_left", [](const py::object& a, const py::object& b) {
        const Ordinal x = as_ordinal(a), y = as_ordinal(b);
        if (x > y)
            throw py::value_error("sub_left needs a <= b");
        return sub_left(x, y);
    }, "The unique d with a + d == b.");
    m.def("pair", [](const py::object& a, const py::object& b) { return goedel_pair(as_ordinal(a), as_ordinal(b)); });
    m.def("unpair", [](const py::object& c) { return goedel_unpair(as_ordinal(c)); });

    py::class_<Program>(m, "Program")
        .def(py::init([](const std::string& text) { return as_program(py::str(text)); }), py::arg("text"))
        .def_property_readonly("dialect", [](const Program& p) { return std::string(to_string(p.dialect())); })
        .def_property_readonly("name", &Program::name)
        .def_property_readonly("index", [](const Program& p) { return to_py(program_index(p)); })
        .def("__str__", [](const Program& p) { return format_program(p); });

    m.def("enumerate_program", [](const py::int_& index, const std::string& dialect) {
        if (dialect != "register" && dialect != "turing")
            throw py::value_error("dialect is 'register' or 'turing'");
        return enumerate_program(natural(index), dialect == "register" ? Dialect::register_machine : Dialect::turing);
    }, py::arg("index"), py::arg("dialect") = "register");

    m.def("run", [](const std::string& family, const py::object& program, const std::string& oracle,
                    const py::object& max_time, std::uint64_t max_events) {
        const auto spec = FamilySpec::parse(family);
        const Program p = as_program(program);
        const auto orc = Oracle::parse(oracle);
        const auto b = budget(max_time, max_events);
        RunResult r;
        {
            py::gil_scoped_release nogil;
            r = run(spec, p, orc, b);
        }
        py::dict d = outcome_dict(r.outcome, p);
        d["events"] = r.events;
        return d;
    }, py::arg("family"), py::arg("program"), py::arg("oracle") = "zero", py::arg("max_time") = "w^2",
       py::arg("max_events") = 100000);

    m.def("census", [](const std::string& family, std::uint64_t max_index, const std::string& oracle,
                       const py::object& max_time, std::uint64_t max_events) {
        const auto spec = FamilySpec::parse(family);
        const auto orc = Oracle::parse(oracle);
        const auto b = budget(max_time, max_events);
        py::gil_scoped_release nogil;
        return halting_census(spec.dialect(), spec, max_index, orc, b).to_tsv();
    }, py::arg("family"), py::arg("max_index"), py::arg("oracle") = "zero", py::arg("max_time") = "w^2",
       py::arg("max_events") = 100000, "Tab-separated rows: index, outcome, halting ordinal or '-'.");

    m.def("sample", [](const std::string& family, const py::object& program, const std::string& target,
                       std::uint64_t seed, std::uint64_t trials, const py::object& max_time,
                       std::uint64_t max_events) {
        const auto spec = FamilySpec::parse(family);
        const Program p = as_program(program);
        const auto t = Target::parse(target);
        const auto b = budget(max_time, max_events);
        FrequencyReport rep;
        {
            py::gil_scoped_release nogil;
            rep = monte_carlo(spec, p, t, seed, trials, b);
        }
        py::dict d;
        d["trials"] = rep.trials;
        d["halted"] = rep.halted;
        d["matched"] = rep.matched_target;
        d["budget_exceeded"] = rep.budget_exceeded;
        d["frequency"] = rep.frequency();
        d["value"] = rep.value();
        return d;
    }, py::arg("family"), py::arg("program"), py::arg("target") = "any", py::arg("seed") = 0,
       py::arg("trials") = 1000, py::arg("max_time") = "w^2", py::arg("max_events") = 100000);
}
