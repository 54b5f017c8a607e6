#!/usr/bin/env python3
"""Rasterize printable ASCII from DejaVu Sans Mono into fixed-cell bitmaps.

Writes src/synth/font_data.inc. Regenerate only when the cell geometry changes;
the output is committed so builds do not need Pillow or the TTF.
"""
import sys
from PIL import Image, ImageDraw, ImageFont

TTF = "/usr/share/fonts/truetype/dejavu/DejaVuSansMono.ttf"


def rasterize(size, cell_w, cell_h, y_offset):
    font = ImageFont.truetype(TTF, size)
    rows = []
    for code in range(32, 127):
        img = Image.new("L", (cell_w, cell_h), 0)
        draw = ImageDraw.Draw(img)
        draw.text((0, y_offset), chr(code), fill=255, font=font)
        glyph = []
        for y in range(cell_h):
            bits = 0
            for x in range(cell_w):
                if img.getpixel((x, y)) >= 128:
                    bits |= 1 << x
            glyph.append(bits)
        rows.append(glyph)
    return rows


def emit(out, name, cell_w, cell_h, rows):
    out.write(f"constexpr int {name}_width = {cell_w};\n")
    out.write(f"constexpr int {name}_height = {cell_h};\n")
    out.write(f"constexpr std::uint8_t {name}_glyphs[95][{cell_h}] = {{\n")
    for code, glyph in zip(range(32, 127), rows):
        body = ", ".join(f"0x{b:02x}" for b in glyph)
        ch = chr(code)
        label = {"\\": "backslash"}.get(ch, ch)
        out.write(f"    {{{body}}},  // {label}\n")
    out.write("};\n\n")


def main(path):
    regular = rasterize(12, 7, 15, 0)
    small = rasterize(8, 5, 9, -1)
    with open(path, "w") as out:
        out.write("// Generated by scripts/gen_font.py from DejaVu Sans Mono. Do not edit.\n")
        out.write("// Bit x of row y is set when pixel (x, y) of the glyph cell is ink.\n\n")
        emit(out, "regular", 7, 15, regular)
        emit(out, "small", 5, 9, small)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/synth/font_data.inc")
