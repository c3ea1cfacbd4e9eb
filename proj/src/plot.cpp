#include "exes/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "exes/metrics.hpp"

namespace exes {

using nlohmann::json;

namespace {

class Svg {
public:
    Svg(double width, double height) : width_(width), height_(height) {}

    void rect(double x, double y, double w, double h, const std::string& fill) {
        body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\""
              << num(h) << "\" fill=\"" << fill << "\"/>\n";
    }
    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0) {
        body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\""
              << num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"/>\n";
    }
    void text(double x, double y, const std::string& s, int size = 12, const char* anchor = "middle") {
        body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << size
              << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << escape(s) << "</text>\n";
    }
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke) {
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : pts) {
            body_ << num(x) << ',' << num(y) << ' ';
        }
        body_ << "\"/>\n";
    }
    void circle(double x, double y, double r, const std::string& fill) {
        body_ << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"" << num(r) << "\" fill=\"" << fill
              << "\"/>\n";
    }

    [[nodiscard]] std::string str() const {
        std::ostringstream out;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_) << "\" height=\"" << num(height_)
            << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_) << "\">\n"
            << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

private:
    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return buf;
    }
    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            switch (c) {
                case '<': out += "&lt;"; break;
                case '>': out += "&gt;"; break;
                case '&': out += "&amp;"; break;
                default: out += c;
            }
        }
        return out;
    }

    double width_;
    double height_;
    std::ostringstream body_;
};

const char* palette(std::size_t i) {
    static const char* colors[] = {"#3b6fb6", "#c8423b", "#e39b2d", "#4d9a57", "#7d5ba6", "#888888"};
    return colors[i % 6];
}

// Value axis with a few ticks on the left edge of a panel.
void axis(Svg& svg, double x, double top, double height, double max_value) {
    svg.line(x, top, x, top + height, "#333");
    for (int i = 0; i <= 4; ++i) {
        const double v = max_value * i / 4.0;
        const double y = top + height - height * i / 4.0;
        svg.line(x - 3, y, x, y, "#333");
        char buf[16];
        std::snprintf(buf, sizeof buf, "%.2g", v);
        svg.text(x - 5, y + 4, buf, 9, "end");
    }
}

}  // namespace

std::string bars_svg(const json& report) {
    const auto& conditions = report.at("conditions");
    std::vector<std::string> payoffs;
    std::vector<std::string> models;
    auto label_of = [](const json& c) {
        const auto& p = c.at("payoffs");
        PayoffScheme s;
        s.high_value = p.at("high_value").get<double>();
        s.low_value = p.at("low_value").get<double>();
        return s.label();
    };
    for (const json& c : conditions) {
        const std::string p = label_of(c);
        if (std::find(payoffs.begin(), payoffs.end(), p) == payoffs.end()) payoffs.push_back(p);
        const std::string m = c.at("mode").get<std::string>() + " " + c.at("model").get<std::string>();
        if (std::find(models.begin(), models.end(), m) == models.end()) models.push_back(m);
    }
    // High stakes on top, as in the published layout.
    std::stable_sort(payoffs.begin(), payoffs.end(), [](const std::string& a, const std::string& b) {
        return a == "high" && b != "high";
    });

    const std::vector<std::string> metrics{"efficiency", "fairness", "stability"};
    const double panel_w = 220, panel_h = 170, margin = 50, legend_h = 30;
    Svg svg(margin + metrics.size() * (panel_w + margin), legend_h + payoffs.size() * (panel_h + 2 * margin));

    for (std::size_t m = 0; m < models.size(); ++m) {
        const double x = margin + static_cast<double>(m) * 170;
        svg.rect(x, 10, 12, 12, palette(m));
        svg.text(x + 16, 21, models[m], 11, "start");
    }
    for (std::size_t row = 0; row < payoffs.size(); ++row) {
        const double top = legend_h + margin + static_cast<double>(row) * (panel_h + 2 * margin);
        for (std::size_t col = 0; col < metrics.size(); ++col) {
            const double left = margin + static_cast<double>(col) * (panel_w + margin);
            const double max_value = metrics[col] == "stability" ? 1.5 : 1.0;
            axis(svg, left, top, panel_h, max_value);
            svg.line(left, top + panel_h, left + panel_w, top + panel_h, "#333");
            svg.text(left + panel_w / 2, top - 10, metrics[col] + " (" + payoffs[row] + ")", 12);

            std::vector<const json*> bars;
            for (const json& c : conditions) {
                if (label_of(c) == payoffs[row]) bars.push_back(&c);
            }
            const double slot = panel_w / static_cast<double>(std::max<std::size_t>(bars.size(), 1));
            for (std::size_t b = 0; b < bars.size(); ++b) {
                const json& c = *bars[b];
                const std::string model = c.at("mode").get<std::string>() + " " + c.at("model").get<std::string>();
                const auto color_index = static_cast<std::size_t>(
                    std::find(models.begin(), models.end(), model) - models.begin());
                const auto& agg = c.at("aggregates").at(metrics[col]);
                const double mean = agg.at("mean").get<double>();
                const double se = agg.at("se").get<double>();
                const double scale = panel_h / max_value;
                const double x = left + slot * static_cast<double>(b) + slot * 0.2;
                const double w = slot * 0.6;
                const double h = std::clamp(mean, 0.0, max_value) * scale;
                svg.rect(x, top + panel_h - h, w, h, palette(color_index));
                const double cx = x + w / 2;
                const double y_hi = top + panel_h - std::min(mean + se, max_value) * scale;
                const double y_lo = top + panel_h - std::max(mean - se, 0.0) * scale;
                svg.line(cx, y_hi, cx, y_lo, "#111", 1.5);
                svg.line(cx - 4, y_hi, cx + 4, y_hi, "#111");
                svg.line(cx - 4, y_lo, cx + 4, y_lo, "#111");
            }
        }
    }
    return svg.str();
}

std::string conventions_svg(const std::vector<Category>& outcomes, const std::string& title) {
    const double left = 50, width = 600, bar_h = 60, trace_h = 140;
    Svg svg(left + width + 30, 60 + bar_h + 40 + trace_h + 40);
    svg.text(left + width / 2, 25, title, 14);
    const double n = static_cast<double>(std::max<std::size_t>(outcomes.size(), 1));
    const double step = width / n;
    for (std::size_t t = 0; t < outcomes.size(); ++t) {
        const char* color = outcomes[t] == Category::P1High ? "#d62728"
                            : outcomes[t] == Category::P2High ? "#1f5fbf"
                                                              : "#111111";
        svg.rect(left + step * static_cast<double>(t) + 0.5, 45, std::max(step - 1.0, 0.5), bar_h, color);
    }

    const std::vector<double> series = surprisal_series(outcomes);
    const double top = 45 + bar_h + 40;
    const double max_value = 3.0;
    axis(svg, left, top, trace_h, max_value);
    svg.line(left, top + trace_h, left + width, top + trace_h, "#333");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t t = 0; t < series.size(); ++t) {
        const double y = top + trace_h - std::min(series[t], max_value) / max_value * trace_h;
        pts.emplace_back(left + step * (static_cast<double>(t) + 0.5), y);
    }
    svg.polyline(pts, "#333");
    svg.text(left + width / 2, top + trace_h + 30, "round", 11);
    svg.text(left - 35, top - 8, "surprisal (nats)", 10, "start");
    return svg.str();
}

std::string reliance_svg(const json& report) {
    const auto& conditions = report.at("conditions");
    const double left = 60, width = 520, top = 50, height = 260;
    Svg svg(left + width + 40, top + height + 70);
    svg.text(left + width / 2, 25, "adaptive-layer reliance", 14);
    axis(svg, left, top, height, 1.0);
    svg.line(left, top + height, left + width, top + height, "#333");
    const double n = static_cast<double>(std::max<std::size_t>(conditions.size(), 1));
    std::vector<std::pair<double, double>> pts;
    std::size_t i = 0;
    for (const json& c : conditions) {
        const auto& agg = c.at("aggregates").at("reliance");
        const double mean = agg.at("mean").get<double>();
        const double se = agg.at("se").get<double>();
        const double x = left + width * (static_cast<double>(i) + 0.5) / n;
        const double y = top + height - mean * height;
        pts.emplace_back(x, y);
        svg.line(x, top + height - (mean + se) * height, x, top + height - (mean - se) * height, "#111", 1.5);
        svg.circle(x, y, 3.5, "#3b6fb6");
        const auto& p = c.at("payoffs");
        char label[48];
        std::snprintf(label, sizeof label, "%g-%g", p.at("high_value").get<double>(), p.at("low_value").get<double>());
        svg.text(x, top + height + 18, label, 11);
        ++i;
    }
    svg.polyline(pts, "#3b6fb6");
    svg.text(left + width / 2, top + height + 45, "payoff condition (high-low)", 11);
    return svg.str();
}

}  // namespace exes
