/** Small dense-matrix helpers used as extraction subjects. */

export function identity(n: number): number[][] {
  const m: number[][] = [];
  for (let i = 0; i < n; i++) {
    const row: number[] = [];
    for (let j = 0; j < n; j++) {
      if (i === j) {
        row.push(1);
      } else {
        row.push(0);
      }
    }
    m.push(row);
  }
  return m;
}

export function transpose(m: number[][]): number[][] {
  const out: number[][] = [];
  for (let j = 0; j < m[0].length; j++) {
    const row: number[] = [];
    for (let i = 0; i < m.length; i++) {
      row.push(m[i][j]);
    }
    out.push(row);
  }
  return out;
}

export function trace(m: number[][]): number {
  let sum = 0;
  for (let i = 0; i < m.length; i++) {
    sum += m[i][i];
  }
  return sum;
}

export function matmul(a: number[][], b: number[][]): number[][] {
  const out: number[][] = [];
  for (let i = 0; i < a.length; i++) {
    const row: number[] = [];
    for (let j = 0; j < b[0].length; j++) {
      let acc = 0;
      for (let k = 0; k < b.length; k++) {
        acc += a[i][k] * b[k][j];
      }
      row.push(acc);
    }
    out.push(row);
  }
  return out;
}
