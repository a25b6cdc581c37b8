// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "coi/cli.hpp"
#include "coi/dataset.hpp"
#include "coi/downstream.hpp"
#include "coi/errors.hpp"
#include "coi/evaluator.hpp"
#include "coi/langid.hpp"
#include "coi/scaffold.hpp"

namespace py = pybind11;
namespace fs = std::filesystem;

PYBIND11_MODULE(_coi, m) {
    m.doc() = "Native core of the coi pipeline";
    m.attr("__version__") = COI_VERSION;
    m.attr("tokenizer_version") = std::string(coi::kTokenizerVersion);

    // Translators run newest first, so bases are registered before subclasses.
    auto error = py::register_exception<coi::Error>(m, "CoiError", PyExc_RuntimeError);
    auto validation = py::register_exception<coi::ValidationError>(m, "ValidationError", error.ptr());
    py::register_exception<coi::ParseError>(m, "ParseError", validation.ptr());
    py::register_exception<coi::ConfigError>(m, "ConfigError", validation.ptr());
    py::register_exception<coi::IoError>(m, "IoError", error.ptr());
    auto transport = py::register_exception<coi::TransportError>(m, "TransportError", error.ptr());
    py::register_exception<coi::ThrottledError>(m, "ThrottledError", transport.ptr());

    m.def("data_dir", &coi::cli::default_data_dir, "Root holding prompts/, rules/ and data/.");

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = coi::cli::run(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs one CLI subcommand; returns (exit_code, stdout, stderr).");

    py::class_<coi::RougeScore>(m, "RougeScore")
        .def_readonly("precision", &coi::RougeScore::precision)
        .def_readonly("recall", &coi::RougeScore::recall)
        .def_readonly("f1", &coi::RougeScore::f1)
        .def("__repr__", [](const coi::RougeScore& s) {
            std::ostringstream os;
            os << "RougeScore(precision=" << s.precision << ", recall=" << s.recall << ", f1=" << s.f1 << ")";
            return os.str();
        });
    m.def("tokenize", &coi::tokenize, py::arg("text"));
    m.def("rouge_l", &coi::rouge_l, py::arg("candidate"), py::arg("reference"));

    m.def("render_target", &coi::render_target, py::arg("hop_outputs"));
    m.def("parse_target", &coi::parse_target, py::arg("text"), py::arg("k"));
    m.def("extract_hop_spans", &coi::extract_hop_spans, py::arg("text"), py::arg("k"));
    m.def("contains_hop_marker", &coi::contains_hop_marker, py::arg("text"));

    m.def(
        "dataset_report_json",
        [](const fs::path& path) { return coi::report_to_json(coi::compute_report(coi::load_dataset(path))).dump(); },
        py::arg("path"));

    py::class_<coi::TrigramIdentifier>(m, "LanguageIdentifier")
        .def_static(
            "load",
            [](std::optional<fs::path> dir, double min_confidence) {
                return coi::TrigramIdentifier::load_dir(dir.value_or(coi::cli::default_data_dir() / "data" / "langid"),
                                                        min_confidence);
            },
            py::arg("profile_dir") = std::nullopt, py::arg("min_confidence") = 0.5)
        .def_property_readonly("languages", &coi::TrigramIdentifier::languages)
        .def("identify", &coi::TrigramIdentifier::identify, py::arg("text"))
        .def(
            "classify",
            [](const coi::TrigramIdentifier& id, std::string_view text) {
                const auto c = id.classify(text);
                return py::make_tuple(c.language, c.confidence);
            },
            py::arg("text"));

    m.def(
        "split_by_marker",
        [](std::string_view text) {
            const auto s = coi::split_by_marker(text);
            return py::make_tuple(s.src_span, s.tgt_span);
        },
        py::arg("text"));
    m.def(
        "split_by_language",
        [](std::string_view text, const std::string& src, const std::string& tgt, const coi::TrigramIdentifier& id) {
            const auto s = coi::split_by_language(text, src, tgt, id);
            return py::make_tuple(s.src_span, s.tgt_span);
        },
        py::arg("text"), py::arg("src_lang"), py::arg("tgt_lang"), py::arg("identifier"));
}
