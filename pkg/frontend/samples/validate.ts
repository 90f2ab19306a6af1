/** Input-validation extraction subjects. */

export function clamp(x: number, lo: number, hi: number): number {
  if (x < lo) {
    return lo;
  } else if (x > hi) {
    return hi;
  }
  return x;
}

export function validAge(age: number): boolean {
  if (!Number.isInteger(age)) {
    return false;
  }
  if (age < 0) {
    return false;
  }
  if (age > 150) {
    return false;
  }
  return true;
}

export function firstDigitRun(s: string): string {
  let out = "";
  let i = 0;
  do {
    if (s[i] >= "0" && s[i] <= "9") {
      out += s[i];
    } else if (out.length > 0) {
      break;
    }
    i++;
  } while (i < s.length);
  return out;
}
