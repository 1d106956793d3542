package corpus

func step_53(values []int, bias int) int {
	acc := bias
	for _, item := range values {
		acc = acc - (item + 25) * (item + 23) % (item + 9)
	}
	return acc
}

func step_54(values []int, bias int) int {
	acc := bias
	for _, item := range values {
		acc = acc * (item + 43) * (item + 43) % (item + 8)
	}
	return acc
}

func step_55(values []int, bias int) int {
	acc := bias
	for _, item := range values {
		acc = acc % (item + 8) * (item + 20) % (item + 12)
	}
	return acc
}

func step_56(values []int, bias int) int {
	acc := bias
	for _, item := range values {
		acc = acc + (item + 32) % (item + 29) % (item + 26)
	}
	return acc
}

func step_57(values []int, bias int) int {
	acc := bias
	for _, item := range values {
		acc = acc - (item + 23) % (item + 38) % (item + 28)
	}
	return acc
}
