/*
 * Copyright (C) 2026 The crackaudit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "crackaudit/error.hpp"
#include "crackaudit/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace crackaudit {

namespace {

constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 48.0;
constexpr double kMarginBottom = 56.0;
constexpr double kPlotHeight = 240.0;
constexpr double kSlotWidth = 30.0;
constexpr double kBoxWidth = 10.0;
constexpr const char* kOfficialColor = "#4c72b0";
constexpr const char* kCrackedColor = "#dd8452";

std::string num(double v) { return format_fixed(v, 2); }

const char* axis_title(Indicator i)
{
    switch (i) {
    case Indicator::Cpu: return "CPU usage (%)";
    case Indicator::Ram: return "RAM usage (MiB)";
    case Indicator::Tcp: return "TCP connections opened";
    case Indicator::Http: return "HTTP connections opened";
    }
    return "";
}

// 1-2-5 step giving roughly `target` intervals over `span`.
double nice_step(double span, int target)
{
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    const double nice = f <= 1.0 ? 1.0 : f <= 2.0 ? 2.0 : f <= 5.0 ? 5.0 : 10.0;
    return nice * mag;
}

std::optional<Spread> pick(const AppProfile& a, Indicator indicator)
{
    switch (indicator) {
    case Indicator::Cpu:
        if (auto u = a.usage()) return u->cpu;
        return std::nullopt;
    case Indicator::Ram:
        if (auto u = a.usage()) return u->ram;
        return std::nullopt;
    case Indicator::Tcp: return a.tcp();
    case Indicator::Http: return a.http();
    }
    return std::nullopt;
}

std::string escape(std::string_view text)
{
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::vector<BoxplotSeries> boxplot_series(std::span<const ScoredPair> pairs, Indicator indicator)
{
    std::vector<BoxplotSeries> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) {
        out.push_back({p.app_id, pick(p.official, indicator), pick(p.cracked, indicator)});
    }
    return out;
}

std::string render_boxplot(std::span<const BoxplotSeries> series, Indicator indicator)
{
    double lo = 0.0;
    double hi = 0.0;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& sp : {s.official, s.cracked}) {
            if (!sp) continue;
            lo = std::min(lo, sp->min);
            hi = std::max(hi, sp->max);
            any = true;
        }
    }
    if (!any) {
        throw Error(ErrorKind::NoData,
                    std::string("no ") + std::string(to_string(indicator)) + " data to plot");
    }
    if (hi <= lo) hi = lo + 1.0;
    const double step = nice_step(hi - lo, 5);
    const double y_lo = std::floor(lo / step) * step;
    const double y_hi = std::ceil(hi / step) * step;
    auto y_of = [&](double v) {
        return kMarginTop + kPlotHeight * (1.0 - (v - y_lo) / (y_hi - y_lo));
    };

    const double plot_width = kSlotWidth * static_cast<double>(series.size());
    const double width = kMarginLeft + plot_width + kMarginRight;
    const double height = kMarginTop + kPlotHeight + kMarginBottom;
    const double axis_y = kMarginTop + kPlotHeight;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width)
        << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height)
        << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
        << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << num(width / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
        << axis_title(indicator) << " per application</text>\n";

    // Legend
    svg << "<rect x=\"" << num(kMarginLeft) << "\" y=\"28\" width=\"10\" height=\"10\" fill=\""
        << kOfficialColor << "\"/><text x=\"" << num(kMarginLeft + 14) << "\" y=\"37\">official</text>\n";
    svg << "<rect x=\"" << num(kMarginLeft + 80) << "\" y=\"28\" width=\"10\" height=\"10\" fill=\""
        << kCrackedColor << "\"/><text x=\"" << num(kMarginLeft + 94) << "\" y=\"37\">cracked</text>\n";

    // Y grid and labels
    const int ticks = static_cast<int>(std::lround((y_hi - y_lo) / step));
    for (int i = 0; i <= ticks; ++i) {
        const double v = y_lo + step * i;
        const double y = y_of(v);
        svg << "<line class=\"grid\" x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(y) << "\" x2=\""
            << num(kMarginLeft + plot_width) << "\" y2=\"" << num(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(kMarginLeft - 6) << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\">" << format_fixed(v, step < 1.0 ? 2 : 0) << "</text>\n";
    }
    svg << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(axis_y) << "\" x2=\""
        << num(kMarginLeft + plot_width) << "\" y2=\"" << num(axis_y) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(kMarginTop) << "\" x2=\""
        << num(kMarginLeft) << "\" y2=\"" << num(axis_y) << "\" stroke=\"black\"/>\n";
    svg << "<text transform=\"translate(16," << num(kMarginTop + kPlotHeight / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << axis_title(indicator) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const double slot_x = kMarginLeft + kSlotWidth * static_cast<double>(i);
        const double centre = slot_x + kSlotWidth / 2;
        const std::string app = escape(s.app_id);
        svg << "<g class=\"app\" data-app=\"" << app << "\">\n";
        const std::pair<const std::optional<Spread>*, const char*> sides[] = {
            {&s.official, "official"}, {&s.cracked, "cracked"}};
        for (std::size_t k = 0; k < 2; ++k) {
            const auto& sp = *sides[k].first;
            if (!sp) continue;
            const char* side = sides[k].second;
            const char* color = k == 0 ? kOfficialColor : kCrackedColor;
            const double x = centre + (k == 0 ? -kBoxWidth - 1.0 : 1.0);
            const double top = y_of(sp->max);
            const double bottom = y_of(sp->min);
            svg << "<title>" << app << ' ' << side << ": min " << num(sp->min) << ", max "
                << num(sp->max) << ", mean " << num(sp->mean) << "</title>\n";
            if (sp->max == sp->min) {
                svg << "<line class=\"box " << side << " tick\" x1=\"" << num(x) << "\" y1=\""
                    << num(top) << "\" x2=\"" << num(x + kBoxWidth) << "\" y2=\"" << num(top)
                    << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
            } else {
                svg << "<rect class=\"box " << side << "\" x=\"" << num(x) << "\" y=\"" << num(top)
                    << "\" width=\"" << num(kBoxWidth) << "\" height=\"" << num(bottom - top)
                    << "\" fill=\"" << color << "\" fill-opacity=\"0.8\" stroke=\"" << color << "\"/>\n";
                svg << "<line class=\"mean\" x1=\"" << num(x) << "\" y1=\"" << num(y_of(sp->mean))
                    << "\" x2=\"" << num(x + kBoxWidth) << "\" y2=\"" << num(y_of(sp->mean))
                    << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
            }
        }
        svg << "<text class=\"xlabel\" x=\"" << num(centre) << "\" y=\"" << num(axis_y + 16)
            << "\" text-anchor=\"middle\">" << (i + 1) << "</text>\n";
        svg << "</g>\n";
    }
    svg << "<text x=\"" << num(kMarginLeft + plot_width / 2) << "\" y=\"" << num(height - 12)
        << "\" text-anchor=\"middle\">Application</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

} // namespace crackaudit
