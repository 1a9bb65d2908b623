#include "dfwm/errors.hpp"
#include "dfwm/io.hpp"
#include "dfwm/optimize.hpp"
#include "dfwm/pulse.hpp"
#include "dfwm/spectrum.hpp"
#include "dfwm/validate.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace dfwm;

namespace {

py::array_t<double> array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict obs_dict(const Observables& o) {
    py::dict d;
    d["T_p"] = o.T_p;
    d["eta_s"] = o.eta_s;
    d["T_s"] = o.T_s;
    d["eta_p"] = o.eta_p;
    return d;
}

py::dict drive_dict(const DriveVector& x) {
    py::dict d;
    d["omega_c"] = x[0];
    d["omega_d"] = x[1];
    d["delta_c"] = x[2];
    d["delta_d"] = x[3];
    d["delta_p"] = x[4];
    return d;
}

ConfigBundle finalized(ConfigBundle b) {
    b.finalize();
    return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Diamond-scheme four-wave-mixing frequency conversion";
    m.attr("__version__") = std::string(version());

    // Translators are tried newest first, so the base goes in first.
    static py::exception<Error> base(m, "Error", PyExc_RuntimeError);
    static py::exception<ParseError> parse(m, "ParseError", base.ptr());
    static py::exception<ValidationError> invalid(m, "ValidationError", base.ptr());
    static py::exception<NumericalError> numerical(m, "NumericalError", base.ptr());
    static py::exception<InvariantError> invariant(m, "InvariantError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::set_error(parse, e.what());
        } catch (const ValidationError& e) {
            py::set_error(invalid, e.what());
        } catch (const NumericalError& e) {
            py::set_error(numerical, e.what());
        } catch (const InvariantError& e) {
            py::set_error(invariant, e.what());
        } catch (const Error& e) {
            py::set_error(base, e.what());
        }
    });

    py::class_<ConfigBundle>(m, "Config")
        .def(py::init([] { return finalized(ConfigBundle{}); }))
        .def_static("preset", [](const std::string& name) { return preset(name); }, py::arg("name"))
        .def_static("from_json", [](const std::string& text) { return load_config(text); }, py::arg("text"))
        .def_static("load", [](const std::string& path) { return load_config_file(path); }, py::arg("path"))
        .def("to_json", [](const ConfigBundle& b, int indent) { return dump_config(b, indent); },
             py::arg("indent") = 2)
        .def("hash", [](const ConfigBundle& b) { return config_hash(b); })
        .def_property(
            "alpha_p", [](const ConfigBundle& b) { return b.medium.alpha_p; },
            [](ConfigBundle& b, double a) {
                ConfigBundle next = b;
                next.medium.alpha_p = a;
                b = finalized(next);
            })
        .def_property_readonly("alpha_c", [](const ConfigBundle& b) { return b.medium.alpha_c; })
        .def_property_readonly("alpha_s", [](const ConfigBundle& b) { return b.medium.alpha_s; })
        .def_property(
            "drive",
            [](const ConfigBundle& b) -> py::object {
                if (!b.drive) return py::none();
                return drive_dict(to_vector(*b.drive));
            },
            [](ConfigBundle& b, const py::dict& d) {
                ConfigBundle next = b;
                DriveConfig drive = next.drive.value_or(DriveConfig{});
                for (auto [k, v] : d) {
                    const auto key = k.cast<std::string>();
                    const double x = v.cast<double>();
                    if (key == "omega_c") drive.omega_c = x;
                    else if (key == "omega_d") drive.omega_d = x;
                    else if (key == "delta_c") drive.delta_c = x;
                    else if (key == "delta_d") drive.delta_d = x;
                    else if (key == "delta_p") drive.delta_p = x;
                    else throw ValidationError("fields." + key, "unknown drive field");
                }
                next.drive = drive;
                b = finalized(next);
            })
        .def("__eq__", [](const ConfigBundle& a, const ConfigBundle& b) { return a == b; })
        .def("__repr__", [](const ConfigBundle& b) { return "Config(" + dump_config(b, -1) + ")"; });

    m.def("observables", [](const ConfigBundle& b) { return obs_dict(observables_at(b)); }, py::arg("config"),
          "T_p, eta_s, T_s, eta_p at the configured drive (omega = 0).");

    m.def(
        "spectrum",
        [](const ConfigBundle& b, const std::string& mode, double from, double to, double step,
           std::optional<double> linewidth, int threads) {
            SpectrumTable t;
            {
                py::gil_scoped_release release;
                t = spectrum_sweep(parse_mode(mode), from, to, step, b, linewidth, threads);
            }
            py::dict d;
            d["delta_p"] = array(t.delta_p());
            d["T_p"] = array(t.T_p());
            d["eta_s"] = array(t.eta_s());
            d["T_s"] = array(t.T_s());
            d["eta_p"] = array(t.eta_p());
            if (t.linewidth) {
                d["T_p_smoothed"] = array(t.T_p_smoothed);
                d["eta_s_smoothed"] = array(t.eta_s_smoothed);
            }
            return d;
        },
        py::arg("config"), py::arg("mode") = "fwm", py::arg("start") = -10.0, py::arg("stop") = 15.0,
        py::arg("step") = 0.1, py::arg("linewidth") = py::none(), py::arg("threads") = 1);

    m.def(
        "pulse",
        [](const ConfigBundle& b, std::optional<double> duration, int threads) {
            PulseOptions o = b.pulse;
            if (duration) o.duration = *duration;
            PulseResult p;
            {
                py::gil_scoped_release release;
                p = propagate_pulse(PulseShape::square, o, b, threads);
            }
            py::dict d;
            d["time"] = array(p.time);
            d["input_probe"] = array(p.input_probe);
            d["output_probe"] = array(p.output_probe);
            d["output_signal"] = array(p.output_signal);
            d["plateau_probe"] = p.plateau_probe;
            d["plateau_signal"] = p.plateau_signal;
            d["cw"] = obs_dict(p.cw);
            d["converged"] = p.converged;
            return d;
        },
        py::arg("config"), py::arg("duration") = py::none(), py::arg("threads") = 1,
        "Square probe pulse; duration in 1/Gamma (default 200 ns).");

    m.def(
        "optimize",
        [](double alpha_p, std::optional<ConfigBundle> base, std::optional<int> starts, std::optional<std::uint64_t> seed,
           std::optional<int> max_evals, int threads) {
            const ConfigBundle b = base.value_or(preset("od200"));
            OptimizeOptions o = b.optimize;
            if (starts) o.starts = *starts;
            if (seed) o.seed = *seed;
            if (max_evals) o.max_evals = *max_evals;
            OptimizationResult r;
            {
                py::gil_scoped_release release;
                r = optimize_eta(alpha_p, b, o, threads);
            }
            py::dict d;
            d["eta_s"] = r.eta_s;
            d["best"] = drive_dict(r.best);
            d["best_start"] = r.best_start;
            d["seed"] = r.seed;
            d["evaluations"] = r.evaluations;
            py::list traces;
            for (const auto& s : r.starts) traces.append(s.trace);
            d["traces"] = traces;
            return d;
        },
        py::arg("alpha_p"), py::arg("config") = py::none(), py::arg("starts") = py::none(),
        py::arg("seed") = py::none(), py::arg("max_evals") = py::none(), py::arg("threads") = 1);

    m.def(
        "validate",
        [](const ConfigBundle& b, bool pulse, int threads) {
            ValidationOptions o;
            o.pulse = pulse;
            ValidationReport r;
            {
                py::gil_scoped_release release;
                r = run_validation(b, o, threads);
            }
            py::list out;
            for (const auto& c : r.checks) {
                py::dict d;
                d["name"] = c.name;
                d["passed"] = c.passed;
                d["skipped"] = c.skipped;
                d["metric"] = c.metric;
                d["threshold"] = c.threshold;
                d["points"] = c.points;
                d["detail"] = c.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("config"), py::arg("pulse") = true, py::arg("threads") = 1);
}
