#include "sisp/svg.hpp"

#include <cstdio>

namespace sisp {

std::string fmt_num(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
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

SvgWriter::SvgWriter(double width, double height) : width_(width), height_(height) {}

void SvgWriter::rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke) {
    body_ << "<rect x=\"" << fmt_num(x) << "\" y=\"" << fmt_num(y) << "\" width=\"" << fmt_num(w) << "\" height=\""
          << fmt_num(h) << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
}

void SvgWriter::circle(double cx, double cy, double r, std::string_view fill, std::string_view stroke,
                       double stroke_width, std::string_view css_class) {
    body_ << "<circle";
    if (!css_class.empty()) body_ << " class=\"" << css_class << "\"";
    body_ << " cx=\"" << fmt_num(cx) << "\" cy=\"" << fmt_num(cy) << "\" r=\"" << fmt_num(r) << "\" fill=\"" << fill
          << "\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt_num(stroke_width, 2) << "\"/>\n";
}

void SvgWriter::line(double x1, double y1, double x2, double y2, std::string_view stroke, double width,
                     std::string_view css_class) {
    body_ << "<line";
    if (!css_class.empty()) body_ << " class=\"" << css_class << "\"";
    body_ << " x1=\"" << fmt_num(x1) << "\" y1=\"" << fmt_num(y1) << "\" x2=\"" << fmt_num(x2) << "\" y2=\""
          << fmt_num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << fmt_num(width, 2) << "\"/>\n";
}

void SvgWriter::polyline(std::string_view points, std::string_view stroke, double width) {
    body_ << "<polyline points=\"" << points << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
          << fmt_num(width, 2) << "\"/>\n";
}

void SvgWriter::text(double x, double y, std::string_view content, double size, std::string_view anchor) {
    body_ << "<text x=\"" << fmt_num(x) << "\" y=\"" << fmt_num(y) << "\" font-size=\"" << fmt_num(size, 1)
          << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << xml_escape(content) << "</text>\n";
}

void SvgWriter::raw(std::string_view element) { body_ << element << "\n"; }

std::string SvgWriter::str() const {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_num(width_, 0) << "\" height=\""
        << fmt_num(height_, 0) << "\" viewBox=\"0 0 " << fmt_num(width_, 0) << " " << fmt_num(height_, 0) << "\">\n"
        << body_.str() << "</svg>\n";
    return out.str();
}

}  // namespace sisp
