/** Sequential single-hue ramp over origin distance: darkest at d = 0. */

const HUE = 145; // green
const SATURATION = 50;
const LIGHT_MIN = 24;
const LIGHT_MAX = 80;

/** k+1 css colors; lightness strictly increases with distance. */
export function distanceShades(k: number): string[] {
  const shades: string[] = [];
  for (let d = 0; d <= k; d++) {
    const light = k === 0 ? LIGHT_MIN
      : LIGHT_MIN + ((LIGHT_MAX - LIGHT_MIN) * d) / k;
    shades.push(`hsl(${HUE}, ${SATURATION}%, ${light}%)`);
  }
  return shades;
}

/** Lightness component (0-100) of a ramp color; accepts the hsl form we
 * emit or the rgb form the DOM may normalize it to. */
export function lightnessOf(color: string): number {
  const hsl = /hsl\(\d+, \d+%, ([\d.]+)%\)/.exec(color);
  if (hsl) return parseFloat(hsl[1]);
  const rgb = /rgb\((\d+),\s*(\d+),\s*(\d+)\)/.exec(color);
  if (rgb) {
    const channels = [rgb[1], rgb[2], rgb[3]].map((c) => parseInt(c, 10) / 255);
    return (50 * (Math.max(...channels) + Math.min(...channels)));
  }
  throw new Error(`not a ramp color: ${color}`);
}
