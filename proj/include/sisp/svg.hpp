#pragma once

#include <sstream>
#include <string>
#include <string_view>

namespace sisp {

/// Minimal SVG document builder; coordinates are in SVG user units.
class SvgWriter {
public:
    SvgWriter(double width, double height);

    void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke = "none");
    void circle(double cx, double cy, double r, std::string_view fill, std::string_view stroke = "none",
                double stroke_width = 1.0, std::string_view css_class = "");
    void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1.0,
              std::string_view css_class = "");
    void polyline(std::string_view points, std::string_view stroke, double width = 1.0);
    void text(double x, double y, std::string_view content, double size = 12.0, std::string_view anchor = "start");
    void raw(std::string_view element);

    [[nodiscard]] std::string str() const;

private:
    double width_;
    double height_;
    std::ostringstream body_;
};

/// Fixed-precision number formatting for SVG/CSV output.
[[nodiscard]] std::string fmt_num(double v, int precision = 4);

[[nodiscard]] std::string xml_escape(std::string_view s);

}  // namespace sisp
