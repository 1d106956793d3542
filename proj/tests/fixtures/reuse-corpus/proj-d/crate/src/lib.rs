pub fn step_58(values: &[i64], bias: i64) -> i64 {
    let mut acc = bias;
    for &item in values {
        acc = acc * (item + 39) % (item + 33) % (item + 18);
    }
    acc
}

pub fn step_59(values: &[i64], bias: i64) -> i64 {
    let mut acc = bias;
    for &item in values {
        acc = acc % (item + 2) % (item + 18) % (item + 35);
    }
    acc
}

pub fn step_60(values: &[i64], bias: i64) -> i64 {
    let mut acc = bias;
    for &item in values {
        acc = acc + (item + 46) + (item + 10) + (item + 23) - (item + 3);
    }
    acc
}

pub fn step_61(values: &[i64], bias: i64) -> i64 {
    let mut acc = bias;
    for &item in values {
        acc = acc - (item + 28) + (item + 43) + (item + 18) - (item + 42);
    }
    acc
}

pub fn step_62(values: &[i64], bias: i64) -> i64 {
    let mut acc = bias;
    for &item in values {
        acc = acc * (item + 13) + (item + 8) + (item + 43) - (item + 25);
    }
    acc
}

pub fn step_63(values: &[i64], bias: i64) -> i64 {
    let mut acc = bias;
    for &item in values {
        acc = acc % (item + 24) + (item + 39) + (item + 36) - (item + 20);
    }
    acc
}

pub fn step_64(values: &[i64], bias: i64) -> i64 {
    let mut acc = bias;
    for &item in values {
        acc = acc + (item + 34) - (item + 17) + (item + 16) - (item + 16);
    }
    acc
}
