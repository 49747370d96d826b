#include "geoquad/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace geoquad {

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) throw std::invalid_argument("linspace: count must be >= 1");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
    out.back() = hi;
    return out;
}

std::vector<double> logspace(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi > 0.0))
        throw std::invalid_argument("logspace: bounds must be positive");
    std::vector<double> out = linspace(std::log(lo), std::log(hi), count);
    for (double& v : out) v = std::exp(v);
    out.back() = hi;
    return out;
}

std::size_t ExperimentReport::cell_count() const {
    if (axes.empty()) return 0;
    std::size_t n = 1;
    for (const Axis& axis : axes) n *= axis.values.size();
    return n;
}

std::vector<double>& ExperimentReport::add_column(const std::string& name) {
    columns.emplace_back(name, std::vector<double>(cell_count(), 0.0));
    return columns.back().second;
}

const std::vector<double>* ExperimentReport::column(const std::string& name) const {
    for (const auto& [cname, values] : columns)
        if (cname == name) return &values;
    return nullptr;
}

void ExperimentReport::validate() const {
    const std::size_t n = cell_count();
    const std::vector<double>* failed = column("failed");
    for (const auto& [name, values] : columns) {
        if (values.size() != n)
            throw ShapeMismatch("report: column " + name + " has " +
                                std::to_string(values.size()) + " cells, expected " +
                                std::to_string(n));
        if (name == "failed") continue;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::isfinite(values[i])) continue;
            if (!failed || (*failed)[i] == 0.0)
                throw ShapeMismatch("report: non-finite unflagged cell in column " + name);
        }
    }
}

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

namespace {

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n\r") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

}  // namespace

std::string to_csv(const ExperimentReport& report) {
    report.validate();
    std::ostringstream out;
    bool first = true;
    for (const Axis& axis : report.axes) {
        if (!first) out << ',';
        first = false;
        out << csv_field(axis.name);
    }
    for (const auto& [name, values] : report.columns) {
        if (!first) out << ',';
        first = false;
        out << csv_field(name);
    }
    out << "\r\n";

    const std::size_t n = report.cell_count();
    const std::size_t n_axes = report.axes.size();
    for (std::size_t row = 0; row < n; ++row) {
        std::size_t rest = row;
        std::vector<std::size_t> idx(n_axes, 0);
        for (std::size_t a = n_axes; a-- > 0;) {
            idx[a] = rest % report.axes[a].values.size();
            rest /= report.axes[a].values.size();
        }
        first = true;
        for (std::size_t a = 0; a < n_axes; ++a) {
            if (!first) out << ',';
            first = false;
            out << format_double(report.axes[a].values[idx[a]]);
        }
        for (const auto& [name, values] : report.columns) {
            if (!first) out << ',';
            first = false;
            out << format_double(values[row]);
        }
        out << "\r\n";
    }
    return out.str();
}

nlohmann::json to_json(const ExperimentReport& report) {
    report.validate();
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["kind"] = report.kind;
    doc["axes"] = nlohmann::json::array();
    for (const Axis& axis : report.axes)
        doc["axes"].push_back({{"name", axis.name}, {"values", axis.values}});
    doc["columns"] = nlohmann::json::array();
    for (const auto& [name, values] : report.columns) {
        // NaN is not representable in JSON; serialize as null per cell.
        nlohmann::json cells = nlohmann::json::array();
        for (double v : values) {
            if (std::isfinite(v))
                cells.push_back(v);
            else
                cells.push_back(nullptr);
        }
        doc["columns"].push_back({{"name", name}, {"values", cells}});
    }
    doc["metadata"] = report.metadata;
    return doc;
}

void validate_report_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw IoError("report json: not an object");
    if (!doc.contains("schema_version") || doc["schema_version"] != 1)
        throw IoError("report json: unsupported schema_version");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw IoError("report json: missing kind");
    for (const char* key : {"axes", "columns"}) {
        if (!doc.contains(key) || !doc[key].is_array())
            throw IoError(std::string("report json: missing array ") + key);
    }
    if (!doc.contains("metadata") || !doc["metadata"].is_object())
        throw IoError("report json: missing metadata object");
    std::size_t cells = doc["axes"].empty() ? 0 : 1;
    for (const auto& axis : doc["axes"]) {
        if (!axis.is_object() || !axis.contains("name") || !axis.contains("values") ||
            !axis["values"].is_array())
            throw IoError("report json: malformed axis");
        cells *= axis["values"].size();
    }
    for (const auto& col : doc["columns"]) {
        if (!col.is_object() || !col.contains("name") || !col.contains("values") ||
            !col["values"].is_array())
            throw IoError("report json: malformed column");
        if (col["values"].size() != cells)
            throw IoError("report json: column shape mismatch");
        for (const auto& v : col["values"])
            if (!v.is_number() && !v.is_null())
                throw IoError("report json: non-numeric cell");
    }
}

ExperimentReport report_from_json(const nlohmann::json& doc) {
    validate_report_json(doc);
    ExperimentReport report;
    report.kind = doc["kind"].get<std::string>();
    for (const auto& axis : doc["axes"])
        report.axes.push_back({axis["name"].get<std::string>(),
                               axis["values"].get<std::vector<double>>()});
    for (const auto& col : doc["columns"]) {
        std::vector<double> values;
        for (const auto& v : col["values"])
            values.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                         : v.get<double>());
        report.columns.emplace_back(col["name"].get<std::string>(), std::move(values));
    }
    for (const auto& [key, value] : doc["metadata"].items())
        report.metadata[key] = value.get<std::string>();
    return report;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

void emit_csv(const ExperimentReport& report, const std::string& path) {
    write_text_file(path, to_csv(report));
}

void emit_json(const ExperimentReport& report, const std::string& path) {
    write_text_file(path, to_json(report).dump(2) + "\n");
}

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 160;
constexpr int kMarginTop = 30;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string svg_header() {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<style>text{fill:#222}</style>\n";
    return out.str();
}

}  // namespace

void emit_svg_line(const ExperimentReport& report, const std::string& path, bool log_y) {
    report.validate();
    if (report.axes.empty()) throw IoError("svg line: report has no axes");
    const std::vector<double>& xs = report.axes.front().values;
    if (xs.size() < 2) throw IoError("svg line: need at least 2 x samples");

    auto ty = [log_y](double v) { return log_y ? std::log10(v) : v; };
    double xmin = *std::min_element(xs.begin(), xs.end());
    double xmax = *std::max_element(xs.begin(), xs.end());
    double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
    for (const auto& [name, values] : report.columns) {
        if (name == "failed") continue;
        for (double v : values) {
            if (!std::isfinite(v) || (log_y && v <= 0.0)) continue;
            ymin = std::min(ymin, ty(v));
            ymax = std::max(ymax, ty(v));
        }
    }
    if (!(ymin < ymax)) {
        ymin = ymin - 1.0;
        ymax = ymax + 1.0;
    }
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kMarginTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream out;
    out << svg_header();
    out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\">" << report.axes.front().name << "</text>\n";
    out << "<text x=\"14\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 14 "
        << kHeight / 2 << ")\" text-anchor=\"middle\">" << (log_y ? "log10 value" : "value")
        << "</text>\n";
    out << "<text x=\"" << kMarginLeft << "\" y=\"18\">" << report.kind << "</text>\n";

    int series = 0;
    for (const auto& [name, values] : report.columns) {
        if (name == "failed") continue;
        const char* color = kPalette[series % 8];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < xs.size() && i < values.size(); ++i) {
            const double v = values[i];
            if (!std::isfinite(v) || (log_y && v <= 0.0)) continue;
            out << px(xs[i]) << ',' << py(ty(v)) << ' ';
        }
        out << "\"/>\n";
        const double ly = kMarginTop + 16.0 * series;
        out << "<line x1=\"" << kWidth - kMarginRight + 10 << "\" y1=\"" << ly << "\" x2=\""
            << kWidth - kMarginRight + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << kWidth - kMarginRight + 40 << "\" y=\"" << ly + 4 << "\">" << name
            << "</text>\n";
        ++series;
    }
    out << "</svg>\n";
    write_text_file(path, out.str());
}

void emit_svg_heatmap(const ExperimentReport& report, const std::string& column_name,
                      const std::string& path) {
    report.validate();
    if (report.axes.size() < 2) throw IoError("svg heatmap: need two axes");
    const std::vector<double>* values = report.column(column_name);
    if (!values) throw IoError("svg heatmap: no column " + column_name);
    const std::size_t ny = report.axes[0].values.size();
    const std::size_t nx = report.axes[1].values.size();
    if (ny * nx != values->size()) throw IoError("svg heatmap: needs exactly two axes");

    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    for (double v : *values) {
        if (!std::isfinite(v)) continue;
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (!(vmin < vmax)) vmax = vmin + 1.0;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const double cw = plot_w / nx, ch = plot_h / ny;

    std::ostringstream out;
    out << svg_header();
    out << "<text x=\"" << kMarginLeft << "\" y=\"18\">" << report.kind << " : " << column_name
        << " (" << format_double(vmin) << " .. " << format_double(vmax) << ")</text>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\">" << report.axes[1].name << "</text>\n";
    out << "<text x=\"14\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 14 "
        << kHeight / 2 << ")\" text-anchor=\"middle\">" << report.axes[0].name << "</text>\n";
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const double v = (*values)[iy * nx + ix];
            std::string fill = "#bbbbbb";
            if (std::isfinite(v)) {
                const double t = (v - vmin) / (vmax - vmin);
                const int r = static_cast<int>(68 + t * (253 - 68));
                const int g = static_cast<int>(1 + t * (231 - 1));
                const int b = static_cast<int>(84 + t * (37 - 84));
                char buffer[8];
                std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", r, g, b);
                fill = buffer;
            }
            out << "<rect x=\"" << kMarginLeft + ix * cw << "\" y=\""
                << kMarginTop + (ny - 1 - iy) * ch << "\" width=\"" << cw << "\" height=\"" << ch
                << "\" fill=\"" << fill << "\"/>\n";
        }
    }
    out << "</svg>\n";
    write_text_file(path, out.str());
}

}  // namespace geoquad
