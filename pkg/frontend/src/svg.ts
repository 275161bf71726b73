/** A minimal SVG scene builder: axes, polylines, heatmap cells, legend. */

export interface Extent {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export class Figure {
  readonly width: number;
  readonly height: number;
  private readonly margin = { left: 64, right: 20, top: 36, bottom: 48 };
  private parts: string[] = [];
  private legend: Array<{ label: string; color: string; dash?: string }> = [];

  constructor(
    private extent: Extent,
    private title: string,
    private xLabel: string,
    private yLabel: string,
    width = 720,
    height = 480,
  ) {
    this.width = width;
    this.height = height;
  }

  px(x: number): number {
    const { left, right } = this.margin;
    const w = this.width - left - right;
    return left + ((x - this.extent.xMin) / (this.extent.xMax - this.extent.xMin)) * w;
  }

  py(y: number): number {
    const { top, bottom } = this.margin;
    const h = this.height - top - bottom;
    return top + h - ((y - this.extent.yMin) / (this.extent.yMax - this.extent.yMin)) * h;
  }

  polyline(xs: number[], ys: number[], color: string, label?: string, dash?: string): void {
    const pts = xs.map((x, i) => `${this.px(x).toFixed(2)},${this.py(ys[i]).toFixed(2)}`).join(' ');
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : '';
    this.parts.push(
      `<polyline fill="none" stroke="${color}" stroke-width="1.5"${dashAttr} points="${pts}"/>`,
    );
    if (label) this.legend.push({ label, color, dash });
  }

  cell(x0: number, x1: number, y0: number, y1: number, color: string): void {
    const x = this.px(x0);
    const y = this.py(y1);
    const w = this.px(x1) - x;
    const h = this.py(y0) - y;
    this.parts.push(
      `<rect x="${x.toFixed(2)}" y="${y.toFixed(2)}" width="${w.toFixed(3)}" height="${h.toFixed(3)}" fill="${color}"/>`,
    );
  }

  hline(y: number, color: string, dash = '4,3', label?: string): void {
    this.parts.push(
      `<line x1="${this.px(this.extent.xMin)}" y1="${this.py(y)}" x2="${this.px(this.extent.xMax)}" y2="${this.py(y)}" stroke="${color}" stroke-dasharray="${dash}"/>`,
    );
    if (label) this.legend.push({ label, color, dash });
  }

  caption(text: string): void {
    this.parts.push(
      `<text x="${this.margin.left}" y="${this.height - 8}" font-size="11" fill="#555">${escapeXml(text)}</text>`,
    );
  }

  private axes(): string {
    const { left, top } = this.margin;
    const x0 = this.px(this.extent.xMin);
    const x1 = this.px(this.extent.xMax);
    const y0 = this.py(this.extent.yMin);
    const y1 = this.py(this.extent.yMax);
    const out: string[] = [
      `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#222"/>`,
      `<text x="${(x0 + x1) / 2}" y="${top - 14}" text-anchor="middle" font-size="14">${escapeXml(this.title)}</text>`,
      `<text x="${(x0 + x1) / 2}" y="${y0 + 32}" text-anchor="middle" font-size="12">${escapeXml(this.xLabel)}</text>`,
      `<text x="${left - 46}" y="${(y0 + y1) / 2}" font-size="12" transform="rotate(-90 ${left - 46} ${(y0 + y1) / 2})" text-anchor="middle">${escapeXml(this.yLabel)}</text>`,
    ];
    for (const frac of [0, 0.25, 0.5, 0.75, 1]) {
      const xv = this.extent.xMin + frac * (this.extent.xMax - this.extent.xMin);
      const yv = this.extent.yMin + frac * (this.extent.yMax - this.extent.yMin);
      out.push(
        `<line x1="${this.px(xv)}" y1="${y0}" x2="${this.px(xv)}" y2="${y0 + 4}" stroke="#222"/>`,
        `<text x="${this.px(xv)}" y="${y0 + 16}" text-anchor="middle" font-size="10">${fmtTick(xv)}</text>`,
        `<line x1="${x0 - 4}" y1="${this.py(yv)}" x2="${x0}" y2="${this.py(yv)}" stroke="#222"/>`,
        `<text x="${x0 - 6}" y="${this.py(yv) + 3}" text-anchor="end" font-size="10">${fmtTick(yv)}</text>`,
      );
    }
    return out.join('\n');
  }

  private legendBlock(): string {
    if (this.legend.length === 0) return '';
    const x = this.width - this.margin.right - 190;
    const out: string[] = [];
    this.legend.forEach((item, i) => {
      const y = this.margin.top + 12 + 16 * i;
      const dashAttr = item.dash ? ` stroke-dasharray="${item.dash}"` : '';
      out.push(
        `<line x1="${x}" y1="${y}" x2="${x + 24}" y2="${y}" stroke="${item.color}" stroke-width="2"${dashAttr}/>`,
        `<text x="${x + 30}" y="${y + 4}" font-size="11">${escapeXml(item.label)}</text>`,
      );
    });
    return out.join('\n');
  }

  render(): string {
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" viewBox="0 0 ${this.width} ${this.height}">`,
      `<rect width="${this.width}" height="${this.height}" fill="white"/>`,
      this.axes(),
      ...this.parts,
      this.legendBlock(),
      '</svg>',
    ].join('\n');
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

function fmtTick(v: number): string {
  const a = Math.abs(v);
  if (a !== 0 && (a >= 1000 || a < 0.01)) return v.toExponential(1);
  return (Math.round(v * 100) / 100).toString();
}

/** Diverging blue-white-red map on [-cap, cap], clamped. */
export function divergingColor(value: number, cap: number): string {
  const t = Math.max(-1, Math.min(1, value / cap));
  const lerp = (a: number, b: number, u: number) => Math.round(a + (b - a) * u);
  let r: number, g: number, b: number;
  if (t < 0) {
    const u = t + 1; // 0 at -cap, 1 at 0
    r = lerp(33, 255, u);
    g = lerp(102, 255, u);
    b = lerp(172, 255, u);
  } else {
    const u = t;
    r = lerp(255, 178, u);
    g = lerp(255, 24, u);
    b = lerp(255, 43, u);
  }
  return `rgb(${r},${g},${b})`;
}
